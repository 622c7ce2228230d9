"""Declarative model files: parsing, validation, and object construction.

A model file is JSON with schema_version "1" and a list of entries
{id, kind, payload}; scalars inside payloads are exact rational strings
"p/q" (or integers), so exactness survives serialization.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from . import rational as ra
from .algebra_zoo import CatalogSpec, catalog
from .forms import TwistedLorentzParams
from .lie_core import LieAlgebra, SymBilinearForm, jacobi_residual
from .twisted_model import TiltSpec, TwistedProductModel, build_model

SCHEMA_VERSION = "1"
KINDS = ("algebra", "form", "reductive_space", "twisted_model")


class ParseError(ValueError):
    """Malformed file: bad JSON, wrong types, unknown fields."""


class ValidationError(ValueError):
    """Well-formed file with inconsistent content (bad refs, bad tables)."""

    def __init__(self, entry_id: str, message: str):
        self.entry_id = entry_id
        super().__init__(f"entry {entry_id!r}: {message}")


@dataclass
class Entry:
    id: str
    kind: str
    payload: dict
    obj: object = None


@dataclass
class ModelFile:
    schema_version: str
    entries: list[Entry]

    def entry(self, entry_id: str) -> Entry:
        for e in self.entries:
            if e.id == entry_id:
                return e
        raise KeyError(entry_id)


def _frac(value, where: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ParseError(f"{where}: exact scalars must be integers or 'p/q' strings")
    try:
        return ra.frac(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"{where}: {exc}") from exc


def _frac_matrix(rows, where: str):
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ParseError(f"{where}: expected a list of rows")
    return [[_frac(x, where) for x in row] for row in rows]


def parse_model_file(text: str) -> ModelFile:
    """Parse and structurally validate; raises ParseError on malformed input."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ParseError(f"schema_version must be {SCHEMA_VERSION!r}")
    raw_entries = doc.get("entries")
    if not isinstance(raw_entries, list):
        raise ParseError("entries must be a list")
    entries = []
    seen = set()
    for pos, raw in enumerate(raw_entries):
        if not isinstance(raw, dict):
            raise ParseError(f"entry #{pos}: must be an object")
        eid = raw.get("id")
        kind = raw.get("kind")
        payload = raw.get("payload")
        if not isinstance(eid, str) or not eid:
            raise ParseError(f"entry #{pos}: missing string id")
        if eid in seen:
            raise ParseError(f"entry #{pos}: duplicate id {eid!r}")
        seen.add(eid)
        if kind not in KINDS:
            raise ParseError(f"entry {eid!r}: unknown kind {kind!r}")
        if not isinstance(payload, dict):
            raise ParseError(f"entry {eid!r}: payload must be an object")
        entries.append(Entry(id=eid, kind=kind, payload=payload))
    return ModelFile(schema_version=SCHEMA_VERSION, entries=entries)


def _build_algebra(entry: Entry) -> LieAlgebra:
    p = entry.payload
    if "catalog" in p:
        c = p["catalog"]
        if not isinstance(c, dict) or "name" not in c:
            raise ParseError(f"entry {entry.id!r}: catalog payload needs a name")
        lam = None
        if "lambda" in c:
            if not isinstance(c["lambda"], list):
                raise ParseError(f"entry {entry.id!r}: lambda must be a list")
            lam = tuple(_frac(x, f"entry {entry.id!r} lambda") for x in c["lambda"])
        for key in ("n", "d"):
            if key in c and not (c[key] is None or (isinstance(c[key], int) and not isinstance(c[key], bool))):
                raise ParseError(f"entry {entry.id!r}: catalog {key} must be an integer")
        spec = CatalogSpec(name=c["name"], n=c.get("n"), d=c.get("d"), lam=lam)
        try:
            return catalog(spec)
        except ValueError as exc:
            raise ValidationError(entry.id, str(exc)) from exc
    if "dim" not in p or "structure" not in p:
        raise ParseError(f"entry {entry.id!r}: algebra payload needs catalog or dim+structure")
    dim = p["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 0:
        raise ParseError(f"entry {entry.id!r}: dim must be a nonnegative integer")
    if not isinstance(p["structure"], list):
        raise ParseError(f"entry {entry.id!r}: structure must be a list of [i, j, k, value]")
    labels = p.get("basis_labels", [f"e{i}" for i in range(dim)])
    if len(labels) != dim:
        raise ValidationError(entry.id, "basis_labels length must equal dim")
    triples = []
    for t in p["structure"]:
        if not isinstance(t, list) or len(t) != 4:
            raise ParseError(f"entry {entry.id!r}: structure entries are [i, j, k, value]")
        i, j, k, v = t
        if not all(isinstance(ix, int) for ix in (i, j, k)):
            raise ParseError(f"entry {entry.id!r}: structure indices must be integers")
        if not all(0 <= ix < dim for ix in (i, j, k)):
            raise ValidationError(entry.id, f"structure index out of range in {t[:3]}")
        triples.append((i, j, k, _frac(v, f"entry {entry.id!r} structure value")))
    try:
        alg = LieAlgebra.from_triples(dim, labels, triples, name=entry.id)
    except ValueError as exc:
        raise ValidationError(entry.id, str(exc)) from exc
    res = jacobi_residual(alg)
    if res != 0:
        triple = _worst_jacobi_triple(alg)
        raise ValidationError(
            entry.id,
            f"structure table violates the Jacobi identity at basis triple {triple} "
            f"(residual {res})",
        )
    return alg


def _worst_jacobi_triple(alg: LieAlgebra):
    from .lie_core import bracket

    basis = alg.basis_elements()
    worst, arg = Fraction(0), None
    for i in range(alg.dim):
        for j in range(i + 1, alg.dim):
            for k in range(j + 1, alg.dim):
                cyc = (
                    bracket(basis[i], bracket(basis[j], basis[k]))
                    + bracket(basis[j], bracket(basis[k], basis[i]))
                    + bracket(basis[k], bracket(basis[i], basis[j]))
                )
                m = max((abs(c) for c in cyc.coords), default=Fraction(0))
                if m > worst:
                    worst, arg = m, (i, j, k)
    return arg


def _resolve_algebra(model: ModelFile, entry: Entry, ref, built) -> LieAlgebra:
    if not isinstance(ref, str):
        raise ParseError(f"entry {entry.id!r}: algebra reference must be an id string")
    if ref not in built or not isinstance(built[ref], LieAlgebra):
        raise ValidationError(entry.id, f"unresolved algebra reference {ref!r}")
    return built[ref]


def _build_form(model: ModelFile, entry: Entry, built) -> SymBilinearForm:
    p = entry.payload
    alg = _resolve_algebra(model, entry, p.get("algebra"), built)
    if p.get("killing"):
        from .lie_core import killing_form

        base = killing_form(alg)
        if "scale" in p:
            return SymBilinearForm(alg, ra.mat_scale(_frac(p["scale"], entry.id), base.matrix))
        return base
    if "twisted_lorentz" in p:
        tl = p["twisted_lorentz"]
        if not isinstance(tl, dict):
            raise ParseError(f"entry {entry.id!r}: twisted_lorentz must be an object")
        params = TwistedLorentzParams(
            alpha=_frac(tl.get("alpha", 1), entry.id), beta=_frac(tl.get("beta", 0), entry.id)
        )
        from .forms import make_twisted_lorentz

        try:
            return make_twisted_lorentz(alg, params)
        except ValueError as exc:
            raise ValidationError(entry.id, str(exc)) from exc
    if "matrix" in p:
        m = _frac_matrix(p["matrix"], f"entry {entry.id!r} matrix")
        try:
            return SymBilinearForm(alg, m)
        except ValueError as exc:
            raise ValidationError(entry.id, str(exc)) from exc
    raise ParseError(f"entry {entry.id!r}: form payload needs killing, twisted_lorentz or matrix")


def _build_space(model: ModelFile, entry: Entry, built):
    from .homogeneous import reductive_space

    p = entry.payload
    alg = _resolve_algebra(model, entry, p.get("algebra"), built)
    for key in ("h", "m"):
        if key in p and not (
            isinstance(p[key], list) and all(isinstance(col, list) for col in p[key])
        ):
            raise ParseError(f"entry {entry.id!r}: {key} must be a list of coordinate columns")
    h_cols = [
        [_frac(x, entry.id) for x in col] for col in p.get("h", [])
    ]
    if "m" in p:
        m_cols = [[_frac(x, entry.id) for x in col] for col in p["m"]]
    else:
        m_cols = [e.coords for e in alg.basis_elements()]
    metric_spec = p.get("metric")
    if isinstance(metric_spec, dict) and "form" in metric_spec:
        ref = metric_spec["form"]
        if ref not in built or not isinstance(built[ref], SymBilinearForm):
            raise ValidationError(entry.id, f"unresolved form reference {ref!r}")
        form = built[ref]
        if form.algebra != alg:
            raise ValidationError(entry.id, "metric form is bound to a different algebra")
        gram = [
            [form.apply(m_cols[i], m_cols[j]) for j in range(len(m_cols))]
            for i in range(len(m_cols))
        ]
    elif isinstance(metric_spec, list):
        gram = _frac_matrix(metric_spec, f"entry {entry.id!r} metric")
    else:
        raise ParseError(f"entry {entry.id!r}: metric must be a matrix or a form reference")
    try:
        return reductive_space(alg, h_cols, m_cols, gram)
    except ValueError as exc:
        raise ValidationError(entry.id, str(exc)) from exc


def _build_twisted_model(entry: Entry) -> TwistedProductModel:
    p = entry.payload
    if "lambda" not in p or not isinstance(p["lambda"], list):
        raise ParseError(f"entry {entry.id!r}: twisted_model needs a lambda list")
    lam = [_frac(x, entry.id) for x in p["lambda"]]
    abelian_dim = p.get("abelian_dim", 0)
    if not isinstance(abelian_dim, int) or isinstance(abelian_dim, bool) or abelian_dim < 0:
        raise ParseError(f"entry {entry.id!r}: abelian_dim must be a nonnegative integer")
    params = TwistedLorentzParams(
        alpha=_frac(p.get("alpha", 1), entry.id), beta=_frac(p.get("beta", 0), entry.id)
    )
    compact = p.get("compact_factor")
    if compact is not None and not isinstance(compact, str):
        raise ParseError(f"entry {entry.id!r}: compact_factor must be a catalog name or null")
    spec = CatalogSpec(compact) if compact is not None else None
    tilt_raw = p.get("tilt", [])
    if not isinstance(tilt_raw, list):
        raise ParseError(f"entry {entry.id!r}: tilt must be a list")
    tilt_pairs = []
    for t in tilt_raw:
        if not isinstance(t, dict) or not isinstance(t.get("k"), list):
            raise ParseError(f"entry {entry.id!r}: tilt entries are objects with k and z")
        tilt_pairs.append(
            (
                tuple(_frac(x, entry.id) for x in t["k"]),
                _frac(t.get("z", 0), entry.id),
            )
        )
    tilt = TiltSpec(
        compact_factor=spec,
        tilt=tuple(tilt_pairs),
        abelian_dim=abelian_dim,
    )
    riemann_p = None
    if "riemann_p" in p:
        riemann_p = _frac_matrix(p["riemann_p"], f"entry {entry.id!r} riemann_p")
    try:
        return build_model(
            lam, params, tilt, riemann_p=riemann_p, zz=_frac(p.get("zz", 1), entry.id)
        )
    except ValueError as exc:
        raise ValidationError(entry.id, str(exc)) from exc


def build_entries(model: ModelFile) -> ModelFile:
    """Construct all entry objects; references are order-independent because
    kinds are built in dependency order (algebras, forms, spaces, models)."""
    built: dict[str, object] = {}
    for kind in KINDS:
        for entry in model.entries:
            if entry.kind != kind:
                continue
            if kind == "algebra":
                entry.obj = _build_algebra(entry)
            elif kind == "form":
                entry.obj = _build_form(model, entry, built)
            elif kind == "reductive_space":
                entry.obj = _build_space(model, entry, built)
            else:
                entry.obj = _build_twisted_model(entry)
            built[entry.id] = entry.obj
    return model


def load_model_file(text: str) -> ModelFile:
    return build_entries(parse_model_file(text))
