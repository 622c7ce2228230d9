import random
from fractions import Fraction as F

import numpy as np
import pytest

from lorentzlie import rational as ra
from lorentzlie.algebra_zoo import (
    abelian,
    aff,
    heisenberg,
    sl2,
    so3,
    twisted_heisenberg,
    twisted_iso_test,
)
from lorentzlie.forms import (
    TwistedLorentzParams,
    ad_invariance_residual,
    condition_star_check,
    lightcone_determined,
    make_twisted_lorentz,
    normalize_twisted_lorentz,
    recognize_twisted_structure,
    recover_twisted_parameters,
    signature,
    symplectic_orthogonal_basis,
)
from lorentzlie.lie_core import (
    Subspace,
    SymBilinearForm,
    direct_sum,
    killing_form,
    transport_structure,
)


def test_ad_invariance_residual_killing_zero():
    for alg in (sl2(), so3(), aff(), heisenberg(2), twisted_heisenberg([F(1), F(2)])):
        assert ad_invariance_residual(killing_form(alg)) == 0


def test_ad_invariance_residual_identity_on_sl2():
    res = ad_invariance_residual(SymBilinearForm(sl2(), ra.eye(3)))
    assert res == 4  # triple (h, e, e): <[h,e],e> + <e,[h,e]> = 4


def test_signature_cases():
    assert signature(killing_form(sl2())) == signature(killing_form(sl2()))
    sig = signature(killing_form(sl2()))
    assert (sig.positive, sig.negative, sig.zero) == (2, 1, 0) and sig.lorentzian
    z = signature(SymBilinearForm(abelian(4), ra.zeros(4, 4)))
    assert (z.positive, z.negative, z.zero) == (0, 0, 4)
    t = twisted_heisenberg([F(1), F(2)])
    s = signature(make_twisted_lorentz(t, TwistedLorentzParams(F(1), F(0))))
    assert (s.positive, s.negative, s.zero) == (5, 1, 0)


def test_make_twisted_lorentz_entries():
    t = twisted_heisenberg([F(1)])
    m = make_twisted_lorentz(t, TwistedLorentzParams(F(2), F(-3))).matrix
    assert m[0][0] == -3 and m[0][1] == 2 and m[2][2] == 2 and m[1][1] == 0
    with pytest.raises(ValueError):
        TwistedLorentzParams(F(0), F(1))
    with pytest.raises(ValueError):
        make_twisted_lorentz(sl2(), TwistedLorentzParams(F(1), F(0)))


def test_make_twisted_lorentz_is_ad_invariant_family():
    rng = random.Random(3)
    for _ in range(6):
        lam = [F(rng.randint(1, 4)) for _ in range(rng.randint(1, 2))]
        t = twisted_heisenberg(lam)
        p = TwistedLorentzParams(F(rng.randint(1, 5), rng.randint(1, 2)), F(rng.randint(-4, 4)))
        form = make_twisted_lorentz(t, p)
        assert ad_invariance_residual(form) == 0
        assert signature(form).lorentzian
        assert recover_twisted_parameters(form) == p


def test_recover_rejects_and_flips():
    t = twisted_heisenberg([F(1)])
    f = make_twisted_lorentz(t, TwistedLorentzParams(F(1), F(0)))
    bad = [row[:] for row in f.matrix]
    bad[2][3] = bad[3][2] = F(1)
    with pytest.raises(ValueError, match="ad-invariant"):
        recover_twisted_parameters(SymBilinearForm(t, bad))
    flipped = [row[:] for row in f.matrix]
    flipped[0][1] = flipped[1][0] = F(-1)
    got = recover_twisted_parameters(SymBilinearForm(t, flipped))
    assert got.alpha == 1 and got.beta == 0


def test_essential_vs_full_ad_invariance():
    # forms with zero residual over W in he_d only are fully ad-invariant:
    # solve the ad(he_d)-invariance constraints; the solution space is the
    # two-parameter family, and every member has zero full residual.
    for lam in ([F(1)], [F(1), F(2)]):
        t = twisted_heisenberg(lam)
        n = t.dim
        from lorentzlie.lie_core import bracket_vec

        unknowns = [(i, j) for i in range(n) for j in range(i, n)]
        index = {p: k for k, p in enumerate(unknowns)}

        def sym_entry(i, j):
            return index[(i, j)] if i <= j else index[(j, i)]

        rows = []
        basis = [t.basis_element(i).coords for i in range(n)]
        for wi in range(1, n):  # W in he_d only
            for xi in range(n):
                bx = bracket_vec(t, basis[wi], basis[xi])
                for yi in range(n):
                    by = bracket_vec(t, basis[wi], basis[yi])
                    row = [F(0)] * len(unknowns)
                    for kk in range(n):
                        if bx[kk] != 0:
                            row[sym_entry(kk, yi)] += bx[kk]
                        if by[kk] != 0:
                            row[sym_entry(kk, xi)] += by[kk]
                    rows.append(row)
        sols = ra.nullspace(rows)
        assert len(sols) == 2  # exactly the (alpha, beta) family
        for sol in sols:
            m = [[sol[sym_entry(i, j)] for j in range(n)] for i in range(n)]
            assert ad_invariance_residual(SymBilinearForm(t, m)) == 0


def test_normalize_twisted_lorentz():
    t = twisted_heisenberg([F(1), F(2)])
    n = t.dim
    assert normalize_twisted_lorentz(t, TwistedLorentzParams(F(1), F(0))) == ra.eye(n)
    L = normalize_twisted_lorentz(t, TwistedLorentzParams(F(4), F(2)))
    assert L[1][0] == F(-1, 4)
    m10 = make_twisted_lorentz(t, TwistedLorentzParams(F(1), F(0))).matrix
    linv = ra.inv(L)
    pull = ra.mat_mul(ra.transpose(linv), ra.mat_mul(m10, linv))
    assert pull == make_twisted_lorentz(t, TwistedLorentzParams(F(4), F(2))).matrix
    assert transport_structure(t, L).table == t.table  # automorphism
    with pytest.raises(ValueError, match="numeric"):
        normalize_twisted_lorentz(t, TwistedLorentzParams(F(3), F(0)))
    Ln = normalize_twisted_lorentz(t, TwistedLorentzParams(F(3), F(0)), mode="numeric")
    assert Ln.shape == (n, n)


def test_symplectic_orthogonal_basis_standard():
    b = symplectic_orthogonal_basis(ra.eye(2), ra.mat([[0, 1], [-1, 0]]))
    assert np.allclose(np.abs(b), np.eye(2), atol=1e-9)


def test_symplectic_orthogonal_basis_scaled_metric():
    b = symplectic_orthogonal_basis(ra.mat([[2, 0], [0, 1]]), ra.mat([[0, 1], [-1, 0]]))
    g = np.diag([2.0, 1.0])
    om = np.array([[0.0, 1.0], [-1.0, 0.0]])
    assert np.allclose(b.T @ g @ b, np.eye(2), atol=1e-9)
    assert np.isclose(abs(b[:, 0] @ om @ b[:, 1]), 1 / np.sqrt(2))


def test_symplectic_orthogonal_basis_random_r4():
    rng = random.Random(11)
    for _ in range(8):
        a = np.array([[rng.randint(-3, 3) for _ in range(4)] for _ in range(4)], dtype=float)
        g = a @ a.T + 4 * np.eye(4)
        while True:
            s = np.array([[rng.randint(-3, 3) for _ in range(4)] for _ in range(4)], dtype=float)
            om = s - s.T
            if abs(np.linalg.det(om)) > 0.5:
                break
        b = symplectic_orthogonal_basis(g.tolist(), om.tolist())
        assert np.allclose(b.T @ g @ b, np.eye(4), atol=1e-8)
        oo = b.T @ om @ b
        mask = np.ones((4, 4))
        mask[0, 1] = mask[1, 0] = mask[2, 3] = mask[3, 2] = 0
        np.fill_diagonal(mask, 0)
        assert np.max(np.abs(oo * mask)) < 1e-8


def test_symplectic_orthogonal_basis_errors():
    with pytest.raises(ValueError, match="even"):
        symplectic_orthogonal_basis(ra.eye(3), ra.zeros(3, 3))
    with pytest.raises(ValueError, match="degenerate"):
        symplectic_orthogonal_basis(ra.eye(2), ra.zeros(2, 2))
    with pytest.raises(ValueError, match="positive definite"):
        symplectic_orthogonal_basis(ra.mat([[1, 0], [0, -1]]), ra.mat([[0, 1], [-1, 0]]))


def test_recognize_twisted_structure_roundtrip():
    t = twisted_heisenberg([F(1)])
    f = make_twisted_lorentz(t, TwistedLorentzParams(F(1), F(0)))
    basis, lam, params = recognize_twisted_structure(t, f)
    assert lam == (F(1),)
    assert params.alpha == 1 and params.beta == 0


def test_recognize_twisted_structure_scrambled():
    rng = random.Random(4)
    for lam_in in ([F(1)], [F(1), F(2)], [F(2), F(2)]):
        t = twisted_heisenberg(lam_in)
        n = t.dim
        f = make_twisted_lorentz(t, TwistedLorentzParams(F(2), F(-3)))
        while True:
            b = [[F(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)]
            for i in range(n):
                b[i][i] += F(1)
            if ra.det(b) != 0 and b[0][0] != 0:
                break
        g2 = transport_structure(t, b)
        f2 = SymBilinearForm(g2, ra.mat_mul(ra.transpose(b), ra.mat_mul(f.matrix, b)))
        _, lam_rec, _ = recognize_twisted_structure(g2, f2)
        ok, _a = twisted_iso_test(list(lam_rec), lam_in)
        assert ok


def test_recognize_twisted_structure_with_z_corrections():
    t = twisted_heisenberg([F(1)])
    b = ra.eye(4)
    b[2][0] = F(1)  # designated generator T + X1: [T+X1, Y1] has a Z-component
    g2 = transport_structure(t, b)
    m = make_twisted_lorentz(t, TwistedLorentzParams(F(1), F(0))).matrix
    f2 = SymBilinearForm(g2, ra.mat_mul(ra.transpose(b), ra.mat_mul(m, b)))
    _, lam, _ = recognize_twisted_structure(g2, f2)
    assert lam == (F(1),)


def test_recognize_rejects_bad_forms():
    t = twisted_heisenberg([F(1)])
    with pytest.raises(ValueError, match="ad-invariant"):
        recognize_twisted_structure(t, SymBilinearForm(t, ra.eye(4)))


def test_condition_star_check():
    s = sl2()
    k = killing_form(s)
    assert condition_star_check(k, Subspace(s, [[F(0), F(0), F(1)], [F(1), F(0), F(0)]])) == (True, 1)
    assert condition_star_check(k, Subspace(s, [[F(1), F(0), F(0)], [F(0), F(1), F(0)]])) == (False, 0)
    assert condition_star_check(k, Subspace(s, [[F(0), F(0), F(1)]])) == (True, 0)


def test_lightcone_determined_basics():
    s = sl2()
    b2 = SymBilinearForm(s, ra.mat([[-1, 0, 0], [0, 1, 0], [0, 0, 1]]))
    b1 = SymBilinearForm(s, ra.mat_scale(F(3), b2.matrix))
    assert lightcone_determined(b1, b2) == 3
    assert lightcone_determined(SymBilinearForm(s, ra.zeros(3, 3)), b2) == 0
    bad = SymBilinearForm(s, ra.mat([[-1, 0, 0], [0, 2, 0], [0, 0, 1]]))
    assert lightcone_determined(bad, b2) is None
    assert abs(lightcone_determined(b1, b2, mode="numeric") - 3) < 1e-9
    assert lightcone_determined(bad, b2, mode="numeric") is None
    with pytest.raises(ValueError, match="Lorentzian"):
        lightcone_determined(b1, SymBilinearForm(s, ra.eye(3)))


def test_lightcone_nonempty_implies_exact_equality():
    rng = random.Random(21)
    for _ in range(25):
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
        lam = F(rng.randint(-4, 4), rng.randint(1, 3))
        got = lightcone_determined(SymBilinearForm(alg, ra.mat_scale(lam, m2)), b2)
        assert got == lam


def test_aff_killing_positive_semidefinite_kernel_is_translations():
    af = aff()
    k = killing_form(af)
    assert k.matrix == ra.mat([[1, 0], [0, 0]])
    sig = signature(k)
    assert (sig.positive, sig.negative, sig.zero) == (1, 0, 1)
    kernel = ra.nullspace(k.matrix)
    assert len(kernel) == 1 and kernel[0] == ra.vec([0, 1])  # span{Y}


def test_central_homomorphism_property():
    # for an ad-invariant form and Y commuting with a subalgebra l:
    # the map X -> k(X, Y) kills [l, l]
    from lorentzlie.lie_core import bracket_vec

    g = direct_sum(so3(), abelian(1))
    k = killing_form(g)
    y = ra.vec([0, 0, 0, 1])  # central
    for i in range(4):
        for j in range(4):
            br = bracket_vec(g, [F(x == i) for x in range(4)], [F(x == j) for x in range(4)])
            assert k.apply(br, y) == 0


def _invariant_form_space_dim(alg):
    from lorentzlie.lie_core import bracket_vec

    n = alg.dim
    unknowns = [(i, j) for i in range(n) for j in range(i, n)]
    index = {p: k for k, p in enumerate(unknowns)}

    def sym(i, j):
        return index[(i, j)] if i <= j else index[(j, i)]

    rows = []
    basis = [alg.basis_element(i).coords for i in range(n)]
    for wi in range(n):
        for xi in range(n):
            bx = bracket_vec(alg, basis[wi], basis[xi])
            for yi in range(n):
                by = bracket_vec(alg, basis[wi], basis[yi])
                row = [F(0)] * len(unknowns)
                for kk in range(n):
                    if bx[kk] != 0:
                        row[sym(kk, yi)] += bx[kk]
                    if by[kk] != 0:
                        row[sym(kk, xi)] += by[kk]
                rows.append(row)
    return len(ra.nullspace(rows))


def test_invariant_form_space_dimensions():
    # simple algebras carry a one-parameter family (multiples of Killing);
    # twisted Heisenberg algebras carry exactly the two-parameter family
    assert _invariant_form_space_dim(so3()) == 1
    assert _invariant_form_space_dim(sl2()) == 1
    assert _invariant_form_space_dim(twisted_heisenberg([F(1)])) == 2
    assert _invariant_form_space_dim(twisted_heisenberg([F(1), F(2)])) == 2
    # repeated frequencies do not enlarge the family
    assert _invariant_form_space_dim(twisted_heisenberg([F(1), F(1)])) == 2


def test_full_killing_decomposition_of_direct_sum():
    g = direct_sum(sl2(), so3())
    k = killing_form(g)
    assert ad_invariance_residual(k) == 0
    sig = signature(k)
    assert (sig.positive, sig.negative, sig.zero) == (2, 4, 0)
