"""Command-line client for the analysis service.

The CLI is a thin client: it posts requests to the HTTP API.  By default it
drives the bundled FastAPI app in-process (no server or network needed);
--server points it at a remote instance instead.  `serve` runs the service.

Exit codes: 0 success, 1 validation failure, 2 parse failure, 3
verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys


def _client(server: str | None):
    if server:
        import httpx

        return httpx.Client(base_url=server, timeout=600.0)
    import warnings

    with warnings.catch_warnings():
        # starlette's in-process client import warns on some httpx versions
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient

    from .service import app

    return TestClient(app)


def _post(args, path: str, payload: dict):
    with _client(args.server) as client:
        resp = client.post(path, json=payload)
        try:
            body = resp.json()
        except ValueError:
            print(f"error: non-JSON response from service ({resp.status_code})", file=sys.stderr)
            sys.exit(2)
        return resp.status_code, body


def _read_model(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        sys.exit(2)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        print(f"parse error: line {exc.lineno}, column {exc.colno}: {exc.msg}", file=sys.stderr)
        sys.exit(2)


def _exit_for_error(status: int, body: dict):
    kind = body.get("error", "unknown")
    detail = body.get("detail", "")
    print(f"{kind} error: {detail}", file=sys.stderr)
    sys.exit(2 if kind == "parse" else 1)


def _fmt(value) -> str:
    if isinstance(value, dict) and "v" in value:
        return str(value["v"])
    return str(value)


def _render_report(report: dict) -> str:
    lines = [
        "# Analysis report",
        "",
        f"mode: {report['provenance']['mode']}, tolerance: {report['provenance']['tolerance']}",
        "",
    ]
    for entry in report["entries"]:
        res = entry["results"]
        lines.append(f"## {entry['id']} ({entry['kind']})")
        lines.append("")
        if entry["kind"] == "algebra":
            flags = res["flags"]
            lines.append("| property | value |")
            lines.append("| --- | --- |")
            lines.append(f"| dim | {res['dim']} |")
            for key in ("solvable", "nilpotent", "semisimple", "reductive", "compact_type"):
                lines.append(f"| {key} | {flags[key]} |")
            lines.append(f"| center dim | {res['center_dim']} |")
            lines.append(f"| derived series dims | {res['derived_series_dims']} |")
            lines.append(f"| lower central dims | {res['lower_central_dims']} |")
            sig = res["killing_signature"]
            lines.append(f"| killing signature (+,-,0) | ({sig[0]}, {sig[1]}, {sig[2]}) |")
            lines.append(f"| classification | {res['classification']['summary']} |")
        elif entry["kind"] == "form":
            sig = res["signature"]
            lines.append("| property | value |")
            lines.append("| --- | --- |")
            lines.append(f"| signature (+,-,0) | ({sig[0]}, {sig[1]}, {sig[2]}) |")
            lines.append(f"| lorentzian | {res['lorentzian']} |")
            lines.append(f"| ad-invariant | {res['ad_invariant']} |")
            if "twisted_parameters" in res:
                tp = res["twisted_parameters"]
                lines.append(f"| (alpha, beta) | ({_fmt(tp['alpha'])}, {_fmt(tp['beta'])}) |")
        elif entry["kind"] == "reductive_space":
            lines.append("| property | value |")
            lines.append("| --- | --- |")
            lines.append(f"| dim m | {res['dim_m']} |")
            lines.append(f"| scal | {_fmt(res['scal'])} |")
            er = res["einstein_ratio"]
            lines.append(f"| einstein ratio | {'-' if er is None else _fmt(er)} |")
            lines.append(f"| holonomy dim | {res['holonomy_dim']} |")
            lines.append("")
            lines.append("Ricci matrix:")
            lines.append("")
            for row in res["ricci"]:
                lines.append("| " + " | ".join(_fmt(x) for x in row) + " |")
            if res["sectional"]:
                lines.append("")
                lines.append("| plane | K |")
                lines.append("| --- | --- |")
                for sec in res["sectional"]:
                    lines.append(f"| ({sec['plane'][0]}, {sec['plane'][1]}) | {_fmt(sec['k'])} |")
        elif entry["kind"] == "twisted_model":
            lines.append("| property | value |")
            lines.append("| --- | --- |")
            lines.append(f"| d | {res['d']} |")
            lines.append(f"| lambda | {res['lambda']} |")
            lines.append(f"| (alpha, beta) | ({_fmt(res['alpha'])}, {_fmt(res['beta'])}) |")
            lines.append(f"| p dim | {res['p_dim']} |")
            lines.append(f"| special | {res['special']} |")
            lines.append(f"| scal | {_fmt(res['scal'])} |")
            lines.append(f"| Ric(T,T) | {_fmt(res['ricci_tt'])} |")
            lines.append(f"| Ricci totally isotropic | {res['ricci_totally_isotropic']} |")
            lines.append(f"| never Ricci-flat | {res['never_ricci_flat']} |")
            lines.append(f"| oracle match | {res['oracle_match']} |")
            if "holonomy_dim" in res:
                lines.append(f"| holonomy dim | {res['holonomy_dim']} |")
        lines.append("")
    return "\n".join(lines)


def cmd_analyze(args) -> int:
    doc = _read_model(args.file)
    status, body = _post(
        args,
        "/v1/analyze",
        {"model_file": doc, "mode": args.mode, "tolerance": args.tol},
    )
    if status != 200:
        _exit_for_error(status, body)
    sys.stdout.write(_render_report(body))
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(body, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return 0


def cmd_classify(args) -> int:
    doc = _read_model(args.file)
    status, body = _post(args, "/v1/classify", {"model_file": doc})
    if status != 200:
        _exit_for_error(status, body)
    cls = body["classification"]
    print(f"{body['id']}: {cls['summary']}")
    if cls.get("in_classification") and "witness_basis" in cls:
        # non-membership is a value, not an error: exit 0 either way
        print("witness basis columns (certificate):")
        for row in cls["witness_basis"]:
            print("  [" + ", ".join(row) + "]")
    return 0


def cmd_verify(args) -> int:
    status, body = _post(args, "/v1/verify", {"suite": args.suite})
    if status != 200:
        _exit_for_error(status, body)
    for suite in body["suites"]:
        print(f"suite {suite['suite']}: {'PASS' if suite['passed'] else 'FAIL'}")
        for crit in suite["criteria"]:
            mark = "PASS" if crit["passed"] else "FAIL"
            print(f"  [{mark}] {crit['name']} ({crit['seconds']}s)")
            print(f"         expected: {crit['expected']}")
            print(f"         measured: {crit['measured']}")
    if not body["passed"]:
        return 3
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("lorentzlie.service:app", host=args.host, port=args.port)
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="lorentzlie",
        description="Exact Lie-algebra and Lorentzian curvature analyses (thin client).",
    )
    parser.add_argument(
        "--server",
        default=None,
        help="base URL of a running service; default runs the app in-process",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="analyze a model file and print a markdown report")
    p.add_argument("file")
    p.add_argument("--mode", choices=("exact", "numeric"), default="exact")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--json", default=None, help="write the machine-readable report here")
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("classify", help="classify the algebra defined by a model file")
    p.add_argument("file")
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("verify", help="run the verification suites")
    p.add_argument("--suite", choices=("all", "constants", "oracle", "properties"), default="all")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(fn=cmd_serve)

    args = parser.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
