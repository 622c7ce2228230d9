"""HTTP service exposing the analyses: analyze, classify, verify.

The endpoints wrap the core package; reports are plain JSON so clients (the
bundled CLI included) can render them however they like.
"""

from __future__ import annotations

from fastapi import FastAPI
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .analysis import analyze_model, classification_dict
from .modelfile import ParseError, ValidationError, build_entries, parse_model_file
from .verify import run_suite, summary_dict

app = FastAPI(
    title="lorentzlie",
    description="Exact Lie-algebra structure, ad-invariant Lorentz forms, and "
    "curvature/holonomy of reductive homogeneous models.",
    version="0.1.0",
)


class AnalyzeRequest(BaseModel):
    model_file: dict = Field(description="model file document (schema_version 1)")
    mode: str = Field(default="exact", pattern="^(exact|numeric)$")
    tolerance: float = 1e-9


class ClassifyRequest(BaseModel):
    model_file: dict


class VerifyRequest(BaseModel):
    suite: str = Field(default="all", pattern="^(all|constants|oracle|properties)$")


class Provenance(BaseModel):
    mode: str
    tolerance: float


class ReportEntry(BaseModel):
    id: str
    kind: str
    results: dict


class Report(BaseModel):
    schema_version: str
    provenance: Provenance
    entries: list[ReportEntry]


class ClassifyResponse(BaseModel):
    id: str
    classification: dict


class CriterionSummary(BaseModel):
    name: str
    passed: bool
    measured: str
    expected: str
    seconds: float


class SuiteSummary(BaseModel):
    suite: str
    passed: bool
    criteria: list[CriterionSummary]


class VerifySummary(BaseModel):
    passed: bool
    suites: list[SuiteSummary]


class Health(BaseModel):
    status: str


def _error(kind: str, detail: str, status: int, entry: str | None = None):
    body = {"error": kind, "detail": detail}
    if entry is not None:
        body["entry"] = entry
    return JSONResponse(status_code=status, content=body)


def _load(doc: dict):
    import json

    model = parse_model_file(json.dumps(doc))
    return build_entries(model)


@app.get("/v1/health", response_model=Health)
def health():
    return {"status": "ok"}


@app.post("/v1/analyze", response_model=Report, responses={400: {}, 422: {}})
def analyze(req: AnalyzeRequest):
    try:
        model = _load(req.model_file)
    except ValidationError as exc:
        return _error("validation", str(exc), 422, entry=exc.entry_id)
    except ParseError as exc:
        return _error("parse", str(exc), 400)
    return analyze_model(model, mode=req.mode, tolerance=req.tolerance)


@app.post("/v1/classify", response_model=ClassifyResponse, responses={400: {}, 422: {}})
def classify(req: ClassifyRequest):
    from .algebra_zoo import classify_decomposition
    from .lie_core import LieAlgebra

    try:
        model = _load(req.model_file)
    except ValidationError as exc:
        return _error("validation", str(exc), 422, entry=exc.entry_id)
    except ParseError as exc:
        return _error("parse", str(exc), 400)
    algebras = [e for e in model.entries if e.kind == "algebra"]
    if len(algebras) != 1:
        return _error("validation", "classify expects a file defining exactly one algebra", 422)
    entry = algebras[0]
    assert isinstance(entry.obj, LieAlgebra)
    result = classify_decomposition(entry.obj)
    return {"id": entry.id, "classification": classification_dict(result)}


@app.post("/v1/verify", response_model=VerifySummary)
def verify(req: VerifyRequest):
    return summary_dict(run_suite(req.suite))
