"""Acceptance gate: every criterion from the verification suites must pass.

Runs the same checks as `lorentzlie verify --suite all` and prints one
pass/fail line per criterion with its measured-vs-expected summary.
"""

import pytest

from lorentzlie.verify import run_suite

_RESULTS = None


def _results():
    global _RESULTS
    if _RESULTS is None:
        _RESULTS = {
            c.name: c for suite in run_suite("all") for c in suite.criteria
        }
    return _RESULTS

CRITERIA = [
    "killing form of sl2 in basis (e,f,h)",
    "sl2 with metric lam*k: Ric=-k/4, scal=-3/(4 lam), K(e,f)=-1/(8 lam)",
    "twisted bi-invariant (alpha,beta)=(1,0): scal=0, Ric|he=0, Ric(T,T)=sum(lam^2)/2, isotropic image",
    "holonomy dimensions: sl2 -> 3; twisted -> 2d abelian; ad([g,g]) spans agree",
    "specialized U/R/Ric/scal match the generic reductive engine on twisted fixtures",
    "Jordan suite on 100 random matrices in sl2+sl2 and so3 representations",
    "classification round-trip on random scrambled direct sums",
    "form suite: ad-invariance residuals, twisted recognition round-trips, condition (*)",
    "curvature symmetries, first Bianchi, operator/diagonal consistency",
    "never-Ricci-flat on twisted models; ad(he_d)-invariant subspaces contain Z",
    "light-cone determination: proportional pairs recovered, others rejected",
]


@pytest.mark.parametrize("name", CRITERIA)
def test_acceptance_criterion(name):
    crit = _results()[name]
    status = "PASS" if crit.passed else "FAIL"
    print(f"[{status}] {name} ({crit.seconds:.2f}s)")
    print(f"    expected: {crit.expected}")
    print(f"    measured: {crit.measured}")
    assert crit.passed, f"{name}: {crit.measured}"


def test_acceptance_covers_all_criteria():
    assert sorted(_results().keys()) == sorted(CRITERIA)
