"""Verification suites: the acceptance criteria as executable checks.

Suites: "constants" (golden closed-form values), "oracle" (specialized vs
generic cross-validations, Jordan, classification round-trips), "properties"
(form/curvature/light-cone property sweeps).  Each criterion reports
measured-vs-expected and a pass flag; cmd_verify and the acceptance tests
both run through here.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction as F

import numpy as np

from . import rational as ra
from .algebra_zoo import (
    abelian,
    aff,
    classify_decomposition,
    heisenberg,
    sl2,
    so3,
    twisted_heisenberg,
    twisted_iso_test,
)
from .forms import (
    TwistedLorentzParams,
    ad_invariance_residual,
    condition_star_check,
    lightcone_determined,
    make_twisted_lorentz,
    recognize_twisted_structure,
    signature,
)
from .homogeneous import (
    biinvariant_space,
    curvature_diag,
    curvature_tensor,
    holonomy_algebra,
    holonomy_biinvariant,
    holonomy_span_equal,
    ricci_tensor,
    scalar_curvature,
    sectional_curvature,
    u_map,
)
from .lie_core import (
    LieAlgebra,
    Subspace,
    SymBilinearForm,
    ad_matrix,
    direct_sum,
    generated_invariant_subspace,
    killing_form,
    transport_structure,
)
from .spectral import jordan_complete, jordan_oracle_spectra
from .twisted_model import (
    TiltSpec,
    build_model,
    curvature_R,
    ricci_specialized,
    scal_specialized,
    u_decomposition,
)
from .algebra_zoo import CatalogSpec


@dataclass
class CriterionResult:
    name: str
    passed: bool
    measured: str
    expected: str
    seconds: float


@dataclass
class SuiteResult:
    suite: str
    criteria: list[CriterionResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.criteria)


def _run(name, expected, fn) -> CriterionResult:
    t0 = time.perf_counter()
    try:
        passed, measured = fn()
    except Exception as exc:  # a crash is a failure with the exception recorded
        passed, measured = False, f"exception: {exc}"
    return CriterionResult(
        name=name,
        passed=passed,
        measured=str(measured),
        expected=str(expected),
        seconds=time.perf_counter() - t0,
    )


def _rand_frac(rng, lo=-3, hi=3, den=3):
    return F(rng.randint(lo, hi), rng.randint(1, den))


def _rand_basis(n, rng, spread=2):
    while True:
        m = [[F(rng.randint(-spread, spread)) for _ in range(n)] for _ in range(n)]
        for i in range(n):
            m[i][i] += F(1)
        if ra.det(m) != 0:
            return m


# ---------------------------------------------------------------------------
# constants suite (criteria 1-4)
# ---------------------------------------------------------------------------

def crit_killing_sl2() -> CriterionResult:
    want = ra.mat([[0, 4, 0], [4, 0, 0], [0, 0, 8]])

    def check():
        got = killing_form(sl2()).matrix
        return got == want, got
    return _run("killing form of sl2 in basis (e,f,h)", want, check)


def crit_sl2_curvature() -> CriterionResult:
    def check():
        s = sl2()
        k = killing_form(s)
        e, f = [F(1), F(0), F(0)], [F(0), F(1), F(0)]
        details = []
        ok = True
        for lam in (F(1), F(1, 2), F(3)):
            sp = biinvariant_space(s, SymBilinearForm(s, ra.mat_scale(lam, k.matrix)))
            ric_ok = ricci_tensor(sp) == ra.mat_scale(F(-1, 4), k.matrix)
            scal = scalar_curvature(sp)
            sec = sectional_curvature(sp, e, f)
            ok = ok and ric_ok and scal == F(-3, 4) / lam and sec == F(-1, 8) / lam
            details.append(f"lam={lam}: Ric=-k/4 {ric_ok}, scal={scal}, K={sec}")
        return ok, "; ".join(details)
    return _run(
        "sl2 with metric lam*k: Ric=-k/4, scal=-3/(4 lam), K(e,f)=-1/(8 lam)",
        "exact equalities for lam in {1, 1/2, 3}",
        check,
    )


def crit_twisted_curvature() -> CriterionResult:
    def check():
        details = []
        ok = True
        for lam in ([F(1)], [F(1), F(2)]):
            t = twisted_heisenberg(lam)
            n = t.dim
            sp = biinvariant_space(
                t, make_twisted_lorentz(t, TwistedLorentzParams(F(1), F(0)))
            )
            ric = ricci_tensor(sp)
            scal = scalar_curvature(sp)
            he_zero = all(ric[i][j] == 0 for i in range(1, n) for j in range(1, n))
            tt = ric[0][0]
            want_tt = sum(x * x for x in lam) / 2
            vr = ra.mat_mul(ra.inv(sp.metric), ric)
            in_z = all(vr[i][j] == 0 for i in range(n) for j in range(n) if i != 1)
            ok = ok and scal == 0 and he_zero and tt == want_tt and in_z
            details.append(
                f"lam={[str(x) for x in lam]}: scal={scal}, Ric(T,T)={tt} (want {want_tt}), "
                f"Ric|he=0 {he_zero}, image in RZ {in_z}"
            )
        return ok, "; ".join(details)
    return _run(
        "twisted bi-invariant (alpha,beta)=(1,0): scal=0, Ric|he=0, Ric(T,T)=sum(lam^2)/2, isotropic image",
        "exact equalities for (d,lam) in {(1,(1)), (2,(1,2))}",
        check,
    )


def crit_holonomy_dims() -> CriterionResult:
    def check():
        s = sl2()
        sp = biinvariant_space(s, killing_form(s))
        hol_s = holonomy_algebra(sp)
        ok = len(hol_s) == 3
        ok = ok and holonomy_span_equal(hol_s, holonomy_biinvariant(s, killing_form(s)))
        details = [f"sl2: {len(hol_s)}"]
        for lam in ([F(1)], [F(1), F(2)]):
            t = twisted_heisenberg(lam)
            form = make_twisted_lorentz(t, TwistedLorentzParams(F(1), F(0)))
            hol = holonomy_algebra(biinvariant_space(t, form))
            commuting = all(
                ra.is_zero_mat(ra.commutator(a, b)) for a in hol for b in hol
            )
            ok = ok and len(hol) == 2 * len(lam) and commuting
            ok = ok and holonomy_span_equal(hol, holonomy_biinvariant(t, form))
            details.append(f"he_{len(lam)}: {len(hol)} abelian={commuting}")
        return ok, "; ".join(details)
    return _run(
        "holonomy dimensions: sl2 -> 3; twisted -> 2d abelian; ad([g,g]) spans agree",
        "3 and 2d with zero commutators and span equality",
        check,
    )


# ---------------------------------------------------------------------------
# oracle suite (criteria 5-7 and the Jordan suite)
# ---------------------------------------------------------------------------

def _twisted_fixtures(rng):
    fixtures = []
    for lam in ([F(1)], [F(1), F(2)]):
        for tilt_z in (F(0), F(1), F(-2)):
            diag = _rand_frac(rng, 1, 3, 2) + 2
            riemann = ra.mat([[diag, 0], [0, diag]])
            fixtures.append(
                (
                    lam,
                    TwistedLorentzParams(F(1), F(0)),
                    TiltSpec(
                        compact_factor=CatalogSpec("so3"),
                        tilt=(((F(1), F(0), F(0)), tilt_z),),
                    ),
                    riemann,
                )
            )
        fixtures.append(
            (
                lam,
                TwistedLorentzParams(F(2), F(-1)),
                TiltSpec(compact_factor=None, tilt=(), abelian_dim=2),
                None,
            )
        )
    return fixtures


def crit_oracle_equivalence() -> CriterionResult:
    def check():
        rng = random.Random(23)
        fixtures = _twisted_fixtures(rng)
        count = 0
        for lam, params, tilt, riemann in fixtures:
            model = build_model(lam, params, tilt, riemann_p=riemann)
            r = model.s_dim + model.p_dim
            for _ in range(3):
                x = [_rand_frac(rng) for _ in range(r)]
                y = [_rand_frac(rng) for _ in range(r)]
                if u_decomposition(model, x, y) != u_map(model.space_full, x, y):
                    return False, "U decomposition mismatch"
                if curvature_R(model, x, y) != curvature_diag(model.space_full, x, y):
                    return False, "R decomposition mismatch"
            if ricci_specialized(model) != ricci_tensor(model.space_full):
                return False, "Ricci decomposition mismatch"
            if scal_specialized(model) != scalar_curvature(model.space_full):
                return False, "scal decomposition mismatch"
            count += 1
        return count >= 6, f"{count} fixtures, all exact"
    return _run(
        "specialized U/R/Ric/scal match the generic reductive engine on twisted fixtures",
        ">= 6 fixtures (special and tilted, d in {1,2}), exact agreement",
        check,
    )


def crit_jordan_suite() -> CriterionResult:
    def check():
        rng = random.Random(31)
        worst = {"reconstruction": 0.0, "commutators": 0.0, "nilpotency": 0.0}

        def multiset_close(a, b, tol=1e-6):
            b = list(b)
            for v in a:
                j = min(range(len(b)), key=lambda i: abs(b[i] - v))
                if abs(b[j] - v) > tol:
                    return False
                b.pop(j)
            return True

        for i in range(100):
            if i % 2 == 0:
                m = np.zeros((4, 4))
                a, b, c = (rng.randint(-5, 5) / rng.randint(1, 3) for _ in range(3))
                m[:2, :2] = [[a, b], [c, -a]]
                a, b, c = (rng.randint(-5, 5) / rng.randint(1, 3) for _ in range(3))
                m[2:, 2:] = [[a, b], [c, -a]]
            else:
                a, b, c = (rng.randint(-5, 5) / rng.randint(1, 3) for _ in range(3))
                m = np.array([[0, -c, b], [c, 0, -a], [-b, a, 0]], dtype=float)
            triple = jordan_complete(m)
            res = triple.residuals(m)
            for key in worst:
                worst[key] = max(worst[key], res[key])
            oracle = jordan_oracle_spectra(m)
            if not multiset_close(np.linalg.eigvals(m), oracle["roots"]):
                return False, f"case {i}: spectrum disagrees with the charpoly oracle"
            if not multiset_close(np.linalg.eigvals(triple.E), 1j * oracle["imag_parts"]):
                return False, f"case {i}: E spectrum wrong"
            if not multiset_close(np.linalg.eigvals(triple.H), oracle["real_parts"]):
                return False, f"case {i}: H spectrum wrong"
        ok = (
            worst["reconstruction"] <= 1e-9
            and worst["commutators"] <= 1e-9
            and worst["nilpotency"] <= 1e-7
        )
        return ok, f"worst residuals {worst}"
    return _run(
        "Jordan suite on 100 random matrices in sl2+sl2 and so3 representations",
        "reconstruction <= 1e-9, commutators <= 1e-9, nilpotency <= 1e-7, oracle spectra",
        check,
    )


def _random_piece(rng):
    kind = rng.choice(
        ["abelian", "so3", "sl2", "aff", "he1", "he2", "tw1", "tw2"]
    )
    if kind == "abelian":
        return abelian(rng.randint(1, 3))
    if kind == "so3":
        return so3()
    if kind == "sl2":
        return sl2()
    if kind == "aff":
        return aff()
    if kind == "he1":
        return heisenberg(1)
    if kind == "he2":
        return heisenberg(2)
    if kind == "tw1":
        return twisted_heisenberg([F(rng.randint(1, 3))])
    return twisted_heisenberg([F(rng.randint(1, 3)), F(rng.randint(1, 4))])


def _piece_multiset(pieces):
    out = []
    for p in pieces:
        if p.name.startswith("abelian"):
            out.append(("abelian", p.dim))
        elif p.name == "so3":
            out.append(("so3", 3))
        else:
            out.append((p.name.split("^")[0].split("(")[0], p.dim))
    return sorted(out)


def crit_classification_roundtrip(cases: int = 50) -> CriterionResult:
    def check():
        rng = random.Random(101)
        done = 0
        while done < cases:
            n_pieces = rng.randint(1, 3)
            s_used = False
            pieces = []
            for _ in range(n_pieces):
                p = _random_piece(rng)
                is_s = p.name not in ("so3",) and not p.name.startswith("abelian")
                if is_s:
                    if s_used:
                        continue
                    s_used = True
                pieces.append(p)
            if not pieces:
                continue
            if sum(p.dim for p in pieces) > 9:
                continue
            g = pieces[0]
            for p in pieces[1:]:
                g = direct_sum(g, p)
            scrambled = transport_structure(g, _rand_basis(g.dim, rng))
            res = classify_decomposition(scrambled)
            if not res.in_classification:
                return False, f"case {done}: {res.reason} on {[p.name for p in pieces]}"
            k_want = sum(p.dim for p in pieces if p.name == "so3")
            a_want = sum(p.dim for p in pieces if p.name.startswith("abelian"))
            s_pieces = [p for p in pieces if p.name != "so3" and not p.name.startswith("abelian")]
            if res.k_dim != k_want or res.a_dim != a_want:
                return False, f"case {done}: sizes {res.summary()} vs pieces {[p.name for p in pieces]}"
            if s_pieces:
                sp = s_pieces[0]
                if sp.name == "sl2" and res.s_kind != "sl2":
                    return False, f"case {done}: wanted sl2, got {res.s_kind}"
                if sp.name == "aff" and res.s_kind != "aff":
                    return False, f"case {done}: wanted aff, got {res.s_kind}"
                if sp.name.startswith("he_") and "^" not in sp.name and res.s_kind != "heisenberg":
                    return False, f"case {done}: wanted heisenberg, got {res.s_kind}"
                if "^" in sp.name:
                    if res.s_kind != "twisted_heisenberg":
                        return False, f"case {done}: wanted twisted, got {res.s_kind}"
                    lam_in = _twisted_lambda_of(sp)
                    ok, _a = twisted_iso_test(res.s_lambda, lam_in)
                    if not ok:
                        return False, f"case {done}: lambda {res.s_lambda} vs {lam_in}"
            elif res.s_kind != "trivial":
                return False, f"case {done}: spurious s part {res.s_kind}"
            done += 1
        return True, f"{cases} scrambled direct sums recovered"
    return _run(
        "classification round-trip on random scrambled direct sums",
        f"{cases} cases recover the piece multiset (twisted lambda up to scale)",
        check,
    )


def _twisted_lambda_of(t: LieAlgebra):
    d = (t.dim - 2) // 2
    return [t.basis_bracket(2 * k, 2 * k + 1)[1] for k in range(1, d + 1)]


# ---------------------------------------------------------------------------
# properties suite (criteria 8-10)
# ---------------------------------------------------------------------------

def crit_form_suite() -> CriterionResult:
    def check():
        rng = random.Random(5)
        algebras = [
            sl2(),
            so3(),
            aff(),
            heisenberg(1),
            heisenberg(2),
            twisted_heisenberg([F(1)]),
            twisted_heisenberg([F(1), F(2)]),
            direct_sum(sl2(), so3()),
        ]
        for alg in algebras:
            if ad_invariance_residual(killing_form(alg)) != 0:
                return False, f"killing form of {alg.name} not ad-invariant"
        for lam in ([F(1)], [F(2), F(3)]):
            t = twisted_heisenberg(lam)
            for a_, b_ in ((F(1), F(0)), (F(2), F(-3)), (F(1, 2), F(5))):
                form = make_twisted_lorentz(t, TwistedLorentzParams(a_, b_))
                if ad_invariance_residual(form) != 0:
                    return False, f"twisted form ({a_},{b_}) not ad-invariant"
                if not signature(form).lorentzian:
                    return False, f"twisted form ({a_},{b_}) not Lorentzian"
        # recognition round-trips on scrambled inputs
        for _ in range(4):
            lam = rng.choice([[F(1)], [F(1), F(2)], [F(2), F(2)]])
            t = twisted_heisenberg(lam)
            form = make_twisted_lorentz(
                t, TwistedLorentzParams(F(rng.randint(1, 3)), F(rng.randint(-2, 2)))
            )
            b = _rand_basis(t.dim, rng)
            if b[0][0] == 0:
                continue
            g2 = transport_structure(t, b)
            m2 = ra.mat_mul(ra.transpose(b), ra.mat_mul(form.matrix, b))
            _, lam_rec, _ = recognize_twisted_structure(g2, SymBilinearForm(g2, m2))
            ok, _sc = twisted_iso_test(list(lam_rec), lam)
            if not ok:
                return False, f"recognition lambda {lam_rec} not equivalent to {lam}"
        s = sl2()
        star = condition_star_check(
            killing_form(s),
            Subspace(s, [[F(0), F(0), F(1)], [F(1), F(0), F(0)]]),
        )
        if star != (True, 1):
            return False, f"condition (*) on span(h,e) gave {star}"
        return True, "all residuals zero, round-trips equivalent, star check (True, 1)"
    return _run(
        "form suite: ad-invariance residuals, twisted recognition round-trips, condition (*)",
        "residual 0; lambda classes recovered; (True, 1) on span(h,e)",
        check,
    )


def crit_curvature_symmetries() -> CriterionResult:
    def check():
        spaces = []
        s = sl2()
        spaces.append(("sl2", biinvariant_space(s, killing_form(s))))
        spaces.append(("so3", biinvariant_space(so3(), killing_form(so3()))))
        t = twisted_heisenberg([F(1), F(2)])
        spaces.append(
            (
                "twisted",
                biinvariant_space(t, make_twisted_lorentz(t, TwistedLorentzParams(F(1), F(0)))),
            )
        )
        af = aff()
        spaces.append(("aff", biinvariant_space(af, SymBilinearForm(af, ra.eye(2)))))
        model = build_model(
            [F(1)],
            TwistedLorentzParams(F(1), F(0)),
            TiltSpec(compact_factor=CatalogSpec("so3"), tilt=(((F(1), F(0), F(0)), F(1)),)),
        )
        spaces.append(("tilted model", model.space_full))
        for name, sp in spaces:
            r = sp.m.dim_subspace
            units = []
            for i in range(r):
                u = ra.zero_vec(r)
                u[i] = F(1)
                units.append(u)
            for i in range(r):
                for j in range(r):
                    for w in range(r):
                        for z in range(r):
                            rxy = curvature_tensor(sp, units[i], units[j], units[w], units[z])
                            if rxy != -curvature_tensor(sp, units[j], units[i], units[w], units[z]):
                                return False, f"{name}: antisymmetry fails"
                            if rxy != curvature_tensor(sp, units[w], units[z], units[i], units[j]):
                                return False, f"{name}: pair symmetry fails"
                    # first Bianchi: R(x,y)w + R(y,w)x + R(w,x)y = 0
            for i in range(r):
                for j in range(r):
                    for w in range(r):
                        from .homogeneous import curvature_operator

                        total = ra.vec_add(
                            ra.mat_vec(curvature_operator(sp, units[i], units[j]), units[w]),
                            ra.mat_vec(curvature_operator(sp, units[j], units[w]), units[i]),
                        )
                        total = ra.vec_add(
                            total, ra.mat_vec(curvature_operator(sp, units[w], units[i]), units[j])
                        )
                        if not ra.is_zero_vec(total):
                            return False, f"{name}: first Bianchi fails"
            # diagonal consistency with the operator form
            for i in range(r):
                for j in range(r):
                    if curvature_tensor(sp, units[i], units[j], units[j], units[i]) != curvature_diag(
                        sp, units[i], units[j]
                    ):
                        return False, f"{name}: operator vs diagonal mismatch"
        return True, f"{len(spaces)} spaces, all identities exact"
    return _run(
        "curvature symmetries, first Bianchi, operator/diagonal consistency",
        "exactly zero residuals on catalog spaces",
        check,
    )


def crit_never_ricci_flat_and_invariant_subspace() -> CriterionResult:
    def check():
        rng = random.Random(77)
        fixtures = _twisted_fixtures(rng)
        for lam, params, tilt, riemann in fixtures:
            model = build_model(lam, params, tilt, riemann_p=riemann)
            ric = ricci_specialized(model)
            if ric[0][0] < sum(x * x for x in lam) / 2:
                return False, f"Ric(T,T) = {ric[0][0]} below the guaranteed floor"
        # invariant-subspace property: 200 random nonzero seeds
        for i in range(200):
            lam = rng.choice([[F(1)], [F(1), F(2)], [F(2), F(3)]])
            t = twisted_heisenberg(lam)
            he_ops = [ad_matrix(t.basis_element(i_)) for i_ in range(1, t.dim)]
            seed = [F(0)] + [_rand_frac(rng) for _ in range(t.dim - 1)]
            if all(c == 0 for c in seed):
                continue
            sub = generated_invariant_subspace(he_ops, t.element(seed))
            z = ra.zero_vec(t.dim)
            z[1] = F(1)
            if not sub.contains(z):
                return False, f"seed {seed} generated a Z-free invariant subspace"
        return True, "Ric(T,T) >= sum(lam^2)/2 > 0 on all fixtures; 200 seeds contain Z"
    return _run(
        "never-Ricci-flat on twisted models; ad(he_d)-invariant subspaces contain Z",
        "Ric(T,T) > 0 everywhere; Z in every generated invariant subspace",
        check,
    )


def crit_lightcone() -> CriterionResult:
    def check():
        rng = random.Random(13)
        recovered = 0
        rejected = 0
        while recovered < 100 or rejected < 100:
            n = rng.choice([2, 3, 4])
            while True:
                a = [[F(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)]
                if ra.det(a) != 0:
                    break
            mink = ra.zeros(n, n)
            mink[0][0] = F(-1)
            for i in range(1, n):
                mink[i][i] = F(1)
            m2 = ra.mat_mul(ra.transpose(a), ra.mat_mul(mink, a))
            alg = abelian(n)
            b2 = SymBilinearForm(alg, m2)
            if recovered < 100:
                lam = _rand_frac(rng, -5, 5)
                got = lightcone_determined(SymBilinearForm(alg, ra.mat_scale(lam, m2)), b2)
                if got != lam:
                    return False, f"proportional pair: got {got}, want {lam}"
                recovered += 1
            if rejected < 100:
                pert = [[_rand_frac(rng) for _ in range(n)] for _ in range(n)]
                sym = [[pert[i][j] + pert[j][i] for j in range(n)] for i in range(n)]
                b1 = SymBilinearForm(alg, sym)
                got = lightcone_determined(b1, b2)
                if got is not None:
                    if sym == ra.mat_scale(got, m2):
                        continue  # accidentally proportional; resample
                    return False, "non-proportional pair accepted"
                rejected += 1
        return True, f"{recovered} proportional recovered, {rejected} non-proportional rejected"
    return _run(
        "light-cone determination: proportional pairs recovered, others rejected",
        "100 recoveries and 100 rejections",
        check,
    )


# ---------------------------------------------------------------------------
# suite assembly
# ---------------------------------------------------------------------------

def run_suite(suite: str = "all") -> list[SuiteResult]:
    suites = {
        "constants": [
            crit_killing_sl2,
            crit_sl2_curvature,
            crit_twisted_curvature,
            crit_holonomy_dims,
        ],
        "oracle": [
            crit_oracle_equivalence,
            crit_jordan_suite,
            crit_classification_roundtrip,
        ],
        "properties": [
            crit_form_suite,
            crit_curvature_symmetries,
            crit_never_ricci_flat_and_invariant_subspace,
            crit_lightcone,
        ],
    }
    if suite == "all":
        names = ["constants", "oracle", "properties"]
    elif suite in suites:
        names = [suite]
    else:
        raise ValueError(f"unknown suite {suite!r}; pick all, constants, oracle or properties")
    out = []
    for name in names:
        result = SuiteResult(suite=name)
        for crit in suites[name]:
            result.criteria.append(crit())
        out.append(result)
    return out


def summary_dict(results: list[SuiteResult]) -> dict:
    return {
        "passed": all(r.passed for r in results),
        "suites": [
            {
                "suite": r.suite,
                "passed": r.passed,
                "criteria": [
                    {
                        "name": c.name,
                        "passed": c.passed,
                        "measured": c.measured,
                        "expected": c.expected,
                        "seconds": round(c.seconds, 3),
                    }
                    for c in r.criteria
                ],
            }
            for r in results
        ],
    }
