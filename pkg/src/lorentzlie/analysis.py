"""Entry analyses producing deterministic, JSON-serializable reports.

Exact values are serialized as rational strings tagged mode "exact";
numeric mode formats the same quantities as floats tagged "numeric" with
the tolerance recorded in the provenance block.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra_zoo import classify_decomposition
from .forms import ad_invariance_residual, recover_twisted_parameters, signature
from .homogeneous import (
    curvature_report,
    ricci_tensor,
    scalar_curvature,
    sectional_curvature,
)
from .lie_core import LieAlgebra, SymBilinearForm, structure_report
from .modelfile import Entry, ModelFile
from .twisted_model import (
    TwistedProductModel,
    holonomy_special,
    is_special,
    ricci_isotropy_check,
    ricci_specialized,
    scal_specialized,
)


def _value(x, mode: str):
    if mode == "numeric":
        return {"v": float(x), "mode": "numeric"}
    return {"v": str(Fraction(x)), "mode": "exact"}


def _matrix(m, mode: str):
    return [[_value(x, mode) for x in row] for row in m]


def _analyze_algebra(alg: LieAlgebra, mode: str) -> dict:
    from .lie_core import killing_form

    rep = structure_report(alg)
    sig = signature(killing_form(alg))
    cls = classify_decomposition(alg)
    out = {
        "dim": alg.dim,
        "basis_labels": list(alg.basis_labels),
        "flags": {
            "solvable": rep.solvable,
            "nilpotent": rep.nilpotent,
            "semisimple": rep.semisimple,
            "reductive": rep.reductive,
            "compact_type": rep.compact_type,
        },
        "derived_series_dims": rep.derived_series_dims,
        "lower_central_dims": rep.lower_central_dims,
        "center_dim": rep.center_dim,
        "killing_signature": [sig.positive, sig.negative, sig.zero],
        "classification": classification_dict(cls),
    }
    return out


def classification_dict(cls) -> dict:
    out = {
        "in_classification": cls.in_classification,
        "summary": cls.summary(),
    }
    if cls.in_classification:
        out.update(
            {
                "k_dim": cls.k_dim,
                "a_dim": cls.a_dim,
                "s_kind": cls.s_kind,
            }
        )
        if cls.s_d is not None:
            out["s_d"] = cls.s_d
        if cls.s_lambda is not None:
            out["s_lambda"] = list(cls.s_lambda)
        if cls.witness_basis is not None:
            out["witness_basis"] = [[str(x) for x in row] for row in cls.witness_basis]
    else:
        out["reason"] = cls.reason
    return out


def _analyze_form(form: SymBilinearForm, mode: str) -> dict:
    sig = signature(form)
    res = ad_invariance_residual(form)
    out = {
        "algebra_dim": form.algebra.dim,
        "signature": [sig.positive, sig.negative, sig.zero],
        "lorentzian": sig.lorentzian,
        "ad_invariance_residual": _value(res, mode),
        "ad_invariant": res == 0,
    }
    try:
        params = recover_twisted_parameters(form)
        out["twisted_parameters"] = {
            "alpha": _value(params.alpha, mode),
            "beta": _value(params.beta, mode),
        }
    except ValueError:
        pass
    return out


def _analyze_space(space, mode: str) -> dict:
    rep = curvature_report(space)
    r = space.m.dim_subspace
    sectional = []
    from .homogeneous import _data, _unit

    data = _data(space)
    for i in range(r):
        for j in range(i + 1, r):
            ei, ej = _unit(r, i), _unit(r, j)
            q = data.pair(ei, ei) * data.pair(ej, ej) - data.pair(ei, ej) ** 2
            if q != 0:
                sectional.append(
                    {"plane": [i, j], "k": _value(sectional_curvature(space, ei, ej), mode)}
                )
    return {
        "dim_m": r,
        "ricci": _matrix(rep.ricci, mode),
        "scal": _value(rep.scal, mode),
        "einstein_ratio": None if rep.einstein_ratio is None else _value(rep.einstein_ratio, mode),
        "sectional": sectional,
        "holonomy_dim": rep.holonomy_dim,
    }


def _analyze_twisted_model(model: TwistedProductModel, mode: str) -> dict:
    special = is_special(model)
    ric = ricci_specialized(model)
    generic_ric = ricci_tensor(model.space_full)
    scal = scal_specialized(model)
    generic_scal = scalar_curvature(model.space_full)
    isotropic, cond1, cond2 = ricci_isotropy_check(model)
    out = {
        "d": model.d,
        "lambda": [str(x) for x in model.lam],
        "p_dim": model.p_dim,
        "alpha": _value(model.params.alpha, mode),
        "beta": _value(model.params.beta, mode),
        "special": special,
        "ricci": _matrix(ric, mode),
        "scal": _value(scal, mode),
        "oracle_match": ric == generic_ric and scal == generic_scal,
        "ricci_totally_isotropic": isotropic,
        "isotropy_conditions": [cond1, cond2],
        "ricci_tt": _value(ric[0][0], mode),
        "never_ricci_flat": ric[0][0] > 0,
    }
    if special:
        out["holonomy_dim"] = len(holonomy_special(model))
    return out


def analyze_entry(entry: Entry, mode: str) -> dict:
    if entry.kind == "algebra":
        return _analyze_algebra(entry.obj, mode)
    if entry.kind == "form":
        return _analyze_form(entry.obj, mode)
    if entry.kind == "reductive_space":
        return _analyze_space(entry.obj, mode)
    if entry.kind == "twisted_model":
        return _analyze_twisted_model(entry.obj, mode)
    raise ValueError(f"unknown kind {entry.kind!r}")


def analyze_model(model: ModelFile, mode: str = "exact", tolerance: float = 1e-9) -> dict:
    """Full report for a built model file; entries are reported in id order."""
    entries = sorted(model.entries, key=lambda e: e.id)
    report_entries = [
        {"id": e.id, "kind": e.kind, "results": analyze_entry(e, mode)} for e in entries
    ]
    return {
        "schema_version": "1",
        "provenance": {"mode": mode, "tolerance": tolerance},
        "entries": report_entries,
    }
