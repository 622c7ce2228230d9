import random
from fractions import Fraction as F

import pytest

from lorentzlie import rational as ra
from lorentzlie.algebra_zoo import (
    CatalogSpec,
    abelian,
    aff,
    canonical_lambda,
    catalog,
    heisenberg,
    heisenberg_decompose,
    radical,
    sl2,
    so3,
    twisted_heisenberg,
    twisted_iso_test,
)
from lorentzlie.forms import ad_invariance_residual
from lorentzlie.lie_core import (
    SymBilinearForm,
    bracket,
    bracket_vec,
    direct_sum,
    transport_structure,
)


def test_catalog_tables():
    s = sl2()
    e, f, h = s.basis_elements()
    assert bracket(h, f).coords == f.scaled(-2).coords
    he2 = heisenberg(2)
    x1, y2 = he2.basis_element(1), he2.basis_element(4)
    assert bracket(x1, y2).is_zero()
    t = catalog(CatalogSpec("twisted_heisenberg", lam=(F(1), F(2))))
    T, x2, y2t = t.basis_element(0), t.basis_element(4), t.basis_element(5)
    assert bracket(T, x2).coords == y2t.scaled(2).coords


def test_catalog_errors():
    with pytest.raises(ValueError):
        twisted_heisenberg([F(0)])
    with pytest.raises(ValueError):
        twisted_heisenberg([F(-1), F(2)])
    with pytest.raises(ValueError):
        heisenberg(0)
    with pytest.raises(ValueError):
        catalog(CatalogSpec("nope"))


def test_catalog_twisted_center_is_z():
    from lorentzlie.lie_core import center

    for lam in ([F(1)], [F(2), F(5)], [F(1), F(1), F(3)]):
        c = center(twisted_heisenberg(lam))
        assert c.dim_subspace == 1
        z = ra.zero_vec(2 * len(lam) + 2)
        z[1] = F(1)
        assert c.contains(z)


def test_radical_cases():
    assert radical(sl2()).dim_subspace == 0
    assert radical(heisenberg(2)).dim_subspace == 5
    g = direct_sum(aff(), so3())
    r = radical(g)
    assert r.dim_subspace == 2
    for v in r.basis:
        assert all(v[i] == 0 for i in range(2, 5))


def test_twisted_iso_test():
    ok, a = twisted_iso_test([F(1), F(2)], [F(2), F(4)])
    assert ok and a == F(1, 2)
    ok, a = twisted_iso_test([F(1), F(2)], [F(1), F(3)])
    assert not ok and a is None
    ok, a = twisted_iso_test([F(5)], [F(1)])
    assert ok and a == 5
    ok, _ = twisted_iso_test([F(1)], [F(1), F(1)])
    assert not ok
    # reflexive, symmetric, scale-covariant
    rng = random.Random(2)
    for _ in range(20):
        lam = [F(rng.randint(1, 6), rng.randint(1, 3)) for _ in range(rng.randint(1, 4))]
        assert twisted_iso_test(lam, lam)[0]
        c = F(rng.randint(1, 5), rng.randint(1, 4))
        assert twisted_iso_test(lam, [c * x for x in lam])[0]
        eta = [F(rng.randint(1, 6), rng.randint(1, 3)) for _ in range(len(lam))]
        assert twisted_iso_test(lam, eta)[0] == twisted_iso_test(eta, lam)[0]


def test_canonical_lambda():
    assert canonical_lambda([F(2), F(4)]) == (1, 2)
    assert canonical_lambda([F(1, 2), F(3, 4)]) == (2, 3)
    assert canonical_lambda([F(3), F(3)]) == (1, 1)
    with pytest.raises(ValueError):
        canonical_lambda([])


def test_heisenberg_decompose_he1():
    he = heisenberg(1)
    form = SymBilinearForm(he, ra.mat([[0, 0, 0], [0, 1, 0], [0, 0, 1]]))
    a_part, h_part, canon = heisenberg_decompose(he, form)
    assert a_part.dim_subspace == 0 and h_part.dim_subspace == 3
    z, x, y = canon
    assert bracket_vec(he, x, y) == z


def test_heisenberg_decompose_abelian():
    a3 = abelian(3)
    a_part, h_part, canon = heisenberg_decompose(a3, SymBilinearForm(a3, ra.eye(3)))
    assert h_part.dim_subspace == 1 and a_part.dim_subspace == 2
    # orthogonal split
    for v in a_part.basis:
        assert sum(v[i] * canon[0][i] for i in range(3)) == 0


def test_heisenberg_decompose_with_abelian_factor():
    g = direct_sum(heisenberg(1), abelian(1))
    form = SymBilinearForm(g, ra.mat([[0, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]))
    a_part, h_part, canon = heisenberg_decompose(g, form)
    assert a_part.dim_subspace == 1 and h_part.dim_subspace == 3
    assert a_part.basis[0][3] != 0
    # h commutes with a and [h,h] is the kernel line
    for av in a_part.basis:
        for hv in h_part.basis:
            assert ra.is_zero_vec(bracket_vec(g, av, hv))
            assert form.apply(av, hv) == 0


def test_heisenberg_decompose_scrambled():
    rng = random.Random(7)
    he = heisenberg(2)
    n = he.dim
    while True:
        b = [[F(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)]
        for i in range(n):
            b[i][i] += F(1)
        if ra.det(b) != 0:
            break
    g = transport_structure(he, b)
    base = ra.zeros(n, n)
    for i in range(1, n):
        base[i][i] = F(1)
    m = ra.mat_mul(ra.transpose(b), ra.mat_mul(base, b))
    form = SymBilinearForm(g, m)
    assert ad_invariance_residual(form) == 0
    a_part, h_part, canon = heisenberg_decompose(g, form)
    assert a_part.dim_subspace == 0 and h_part.dim_subspace == 5
    z = canon[0]
    for k in range(2):
        xk, yk = canon[1 + 2 * k], canon[2 + 2 * k]
        assert bracket_vec(g, xk, yk) == z
        for j in range(2):
            if j != k:
                assert ra.is_zero_vec(bracket_vec(g, xk, canon[1 + 2 * j]))
                assert ra.is_zero_vec(bracket_vec(g, xk, canon[2 + 2 * j]))


def test_heisenberg_decompose_errors():
    with pytest.raises(ValueError):
        heisenberg_decompose(sl2(), SymBilinearForm(sl2(), ra.eye(3)))
    he = heisenberg(1)
    with pytest.raises(ValueError):
        # indefinite form
        heisenberg_decompose(he, SymBilinearForm(he, ra.mat([[-1, 0, 0], [0, 1, 0], [0, 0, 1]])))
    with pytest.raises(ValueError):
        # kernel too large
        heisenberg_decompose(he, SymBilinearForm(he, ra.zeros(3, 3)))
