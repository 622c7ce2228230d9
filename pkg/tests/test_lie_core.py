import random
from fractions import Fraction as F

import pytest

from lorentzlie import rational as ra
from lorentzlie.algebra_zoo import abelian, aff, heisenberg, sl2, so3, twisted_heisenberg
from lorentzlie.lie_core import (
    AlgebraMismatch,
    LieAlgebra,
    ad_matrix,
    bracket,
    bracket_vec,
    center,
    direct_sum,
    generated_invariant_subspace,
    jacobi_residual,
    killing_form,
    structure_report,
    transport_structure,
)


def test_bracket_sl2_triple():
    s = sl2()
    e, f, h = s.basis_elements()
    assert bracket(e, f).coords == h.coords
    assert bracket(h, e).coords == e.scaled(2).coords
    assert bracket(h, f).coords == f.scaled(-2).coords


def test_bracket_antisymmetry_on_random_elements():
    s = twisted_heisenberg([F(1), F(3)])
    rng = random.Random(1)
    for _ in range(20):
        x = s.element([F(rng.randint(-3, 3)) for _ in range(s.dim)])
        y = s.element([F(rng.randint(-3, 3)) for _ in range(s.dim)])
        assert bracket(x, x).is_zero()
        assert bracket(x, y).coords == bracket(y, x).scaled(-1).coords


def test_bracket_twisted_relations():
    t = twisted_heisenberg([F(1)])
    T, Z, X1, Y1 = t.basis_elements()
    assert bracket(T, Y1).coords == X1.scaled(-1).coords
    assert bracket(X1, Y1).coords == Z.coords


def test_bracket_algebra_mismatch():
    with pytest.raises(AlgebraMismatch):
        bracket(sl2().basis_element(0), so3().basis_element(0))


def test_ad_matrix_h_action():
    s = sl2()
    ad_h = ad_matrix(s.basis_element(2))
    # column of e is 2e, column of f is -2f
    assert [row[0] for row in ad_h] == ra.vec([2, 0, 0])
    assert [row[1] for row in ad_h] == ra.vec([0, -2, 0])


def test_ad_matrix_abelian_zero():
    a = abelian(4)
    assert ra.is_zero_mat(ad_matrix(a.element([1, 2, 3, 4])))


def test_ad_matrix_twisted_rotation_block():
    t = twisted_heisenberg([F(1)])
    ad_t = ad_matrix(t.basis_element(0))
    # block rotation generator on span{X1, Y1}
    assert ad_t[3][2] == 1 and ad_t[2][3] == -1
    assert ad_t[0][0] == 0 and ad_t[1][1] == 0


def test_jacobi_residual_catalog_zero():
    for alg in (sl2(), so3(), aff(), heisenberg(2), twisted_heisenberg([F(1), F(2)]), abelian(5)):
        assert jacobi_residual(alg) == 0


def test_jacobi_residual_perturbed():
    he = heisenberg(1)
    # [X1,Y1] = Z + X1 still satisfies Jacobi (the result is aff + R)
    still_lie = LieAlgebra.from_triples(
        3, he.basis_labels, he.structure_triples() + [(1, 2, 1, F(1))]
    )
    assert jacobi_residual(still_lie) == 0
    # a perturbation moving the center, [Z,X1] = X1, breaks it
    bad = LieAlgebra.from_triples(
        3, he.basis_labels, he.structure_triples() + [(0, 1, 1, F(1))]
    )
    assert jacobi_residual(bad) > 0
    he2 = heisenberg(2)
    bad2 = LieAlgebra.from_triples(
        5, he2.basis_labels, he2.structure_triples() + [(1, 2, 3, F(1))]
    )
    assert jacobi_residual(bad2) > 0


def test_killing_form_sl2_exact_matrix():
    assert killing_form(sl2()).matrix == ra.mat([[0, 4, 0], [4, 0, 0], [0, 0, 8]])


def test_killing_form_abelian_zero():
    assert ra.is_zero_mat(killing_form(abelian(3)).matrix)


def test_killing_form_twisted():
    t = twisted_heisenberg([F(1)])
    k = killing_form(t)
    assert k.matrix[0][0] == -2
    for i in range(1, 4):
        for j in range(1, 4):
            assert k.matrix[i][j] == 0


def test_center_heisenberg_is_z_line():
    for d in (1, 2, 3):
        c = center(heisenberg(d))
        assert c.dim_subspace == 1
        z = ra.zero_vec(2 * d + 1)
        z[0] = F(1)
        assert c.contains(z)


def test_center_trivial_and_full():
    assert center(sl2()).dim_subspace == 0
    assert center(abelian(4)).dim_subspace == 4


def test_structure_report_flags():
    he = structure_report(heisenberg(2))
    assert he.nilpotent and he.solvable and not he.semisimple
    assert len(he.lower_central_dims) == 3  # dims (5, 1, 0): two-step nilpotent

    af = structure_report(aff())
    assert af.solvable and not af.nilpotent
    assert af.derived_series_dims == [2, 1, 0]
    assert af.lower_central_dims == [2, 1]

    s3 = structure_report(so3())
    assert s3.semisimple and s3.compact_type and s3.reductive

    s2 = structure_report(sl2())
    assert s2.semisimple and not s2.compact_type


def test_structure_report_direct_sum_laws():
    a, b = aff(), so3()
    rep = structure_report(direct_sum(a, b))
    assert rep.solvable == (structure_report(a).solvable and structure_report(b).solvable)
    assert rep.semisimple == (structure_report(a).semisimple and structure_report(b).semisimple)
    both = direct_sum(sl2(), so3())
    assert structure_report(both).semisimple


def test_direct_sum_blocks():
    g = direct_sum(so3(), abelian(2))
    assert g.dim == 5
    x = g.basis_element(0)
    y = g.basis_element(4)
    assert bracket(x, y).is_zero()
    k = killing_form(g).matrix
    k_so3 = killing_form(so3()).matrix
    for i in range(3):
        for j in range(3):
            assert k[i][j] == k_so3[i][j]
    for i in range(3, 5):
        assert all(k[i][j] == 0 for j in range(5))


def test_generated_invariant_subspace_examples():
    t = twisted_heisenberg([F(1)])
    ops = [ad_matrix(t.basis_element(i)) for i in (1, 2, 3)]  # ad(he_1)
    sub = generated_invariant_subspace(ops, t.basis_element(2))
    assert sub.dim_subspace == 2
    z = ra.zero_vec(4)
    z[1] = F(1)
    assert sub.contains(z)
    sub_t = generated_invariant_subspace(ops, t.basis_element(0))
    assert sub_t.dim_subspace == 4
    only = generated_invariant_subspace([], t.basis_element(2))
    assert only.dim_subspace == 1
    with pytest.raises(ValueError):
        generated_invariant_subspace(ops, t.element([0, 0, 0, 0]))


def test_transport_structure_roundtrip():
    rng = random.Random(8)
    g = direct_sum(sl2(), abelian(1))
    n = g.dim
    while True:
        b = [[F(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)]
        for i in range(n):
            b[i][i] += F(1)
        if ra.det(b) != 0:
            break
    g2 = transport_structure(g, b)
    binv = ra.inv(b)
    g3 = transport_structure(g2, binv)
    assert g3.table == g.table


def test_killing_ad_invariance_kernel_is_ideal():
    # kernel of any ad-invariant form is closed under brackets
    g = direct_sum(aff(), so3())
    k = killing_form(g)
    kernel = ra.nullspace(k.matrix)
    for v in kernel:
        for e in g.basis_elements():
            w = bracket_vec(g, e.coords, v)
            assert ra.span_contains(kernel, w)
