"""Catalog algebras, the radical, and the direct-sum classifier.

The classifier is a certificate-producing pattern matcher for algebras of the
shape k + a + s (compact semisimple + abelian + one of: trivial, aff(R),
Heisenberg, twisted Heisenberg, sl2(R)), all summands ideals.  It is not a
general isomorphism solver; inputs outside these shapes come back as
"not in classification".
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import rational as ra
from .lie_core import (
    LieAlgebra,
    Subspace,
    bracket_vec,
    derived_subalgebra,
    killing_form,
    transport_structure,
)
from .rational import Mat, Vec


# ---------------------------------------------------------------------------
# catalog
# ---------------------------------------------------------------------------

CATALOG_NAMES = ("abelian", "aff", "sl2", "heisenberg", "twisted_heisenberg", "so3")


@dataclass(frozen=True)
class CatalogSpec:
    name: str
    n: int | None = None          # abelian dimension
    d: int | None = None          # Heisenberg rank
    lam: tuple[Fraction, ...] | None = None  # twisted frequencies


def abelian(n: int) -> LieAlgebra:
    if n < 0:
        raise ValueError("abelian dimension must be nonnegative")
    return LieAlgebra.from_triples(n, [f"A{i+1}" for i in range(n)], [], name=f"abelian({n})")


def aff() -> LieAlgebra:
    # basis (X, Y) with [X, Y] = Y
    return LieAlgebra.from_triples(2, ["X", "Y"], [(0, 1, 1, 1)], name="aff")


def sl2() -> LieAlgebra:
    # basis (e, f, h) with [e,f] = h, [h,e] = 2e, [h,f] = -2f
    triples = [(0, 1, 2, 1), (2, 0, 0, 2), (2, 1, 1, -2)]
    return LieAlgebra.from_triples(3, ["e", "f", "h"], triples, name="sl2")


def so3() -> LieAlgebra:
    # cross-product basis: [A1,A2] = A3 and cyclic
    triples = [(0, 1, 2, 1), (1, 2, 0, 1), (2, 0, 1, 1)]
    return LieAlgebra.from_triples(3, ["A1", "A2", "A3"], triples, name="so3")


def heisenberg(d: int) -> LieAlgebra:
    """he_d with basis (Z, X1, Y1, ..., Xd, Yd) and [Xk, Yk] = Z."""
    if d < 1:
        raise ValueError("Heisenberg rank d must be at least 1")
    labels = ["Z"]
    triples = []
    for k in range(1, d + 1):
        labels += [f"X{k}", f"Y{k}"]
        triples.append((2 * k - 1, 2 * k, 0, 1))
    return LieAlgebra.from_triples(2 * d + 1, labels, triples, name=f"he_{d}")


def twisted_heisenberg(lam) -> LieAlgebra:
    """he_d^lambda with basis (T, Z, X1, Y1, ..., Xd, Yd).

    Nonzero brackets: [Xk,Yk] = lam_k Z, [T,Xk] = lam_k Yk, [T,Yk] = -lam_k Xk.
    """
    lam = tuple(ra.frac(x) for x in lam)
    if len(lam) < 1:
        raise ValueError("twisted Heisenberg needs d >= 1")
    if any(x <= 0 for x in lam):
        raise ValueError("twisted frequencies must be strictly positive")
    d = len(lam)
    labels = ["T", "Z"]
    triples = []
    for k in range(1, d + 1):
        labels += [f"X{k}", f"Y{k}"]
        xi, yi = 2 * k, 2 * k + 1
        triples.append((xi, yi, 1, lam[k - 1]))
        triples.append((0, xi, yi, lam[k - 1]))
        triples.append((0, yi, xi, -lam[k - 1]))
    return LieAlgebra.from_triples(2 * d + 2, labels, triples, name=f"he_{d}^{tuple(map(str, lam))}")


def catalog(spec: CatalogSpec) -> LieAlgebra:
    if spec.name == "abelian":
        return abelian(spec.n if spec.n is not None else 1)
    if spec.name == "aff":
        return aff()
    if spec.name == "sl2":
        return sl2()
    if spec.name == "so3":
        return so3()
    if spec.name == "heisenberg":
        return heisenberg(spec.d if spec.d is not None else 1)
    if spec.name == "twisted_heisenberg":
        if spec.lam is None:
            raise ValueError("twisted_heisenberg needs a frequency tuple")
        return twisted_heisenberg(spec.lam)
    raise ValueError(f"unknown catalog algebra {spec.name!r}")


# ---------------------------------------------------------------------------
# radical and subspace structure helpers
# ---------------------------------------------------------------------------

def _subspace_derived_dims(a: LieAlgebra, basis: list[Vec]) -> list[int]:
    current = ra.span_basis([v[:] for v in basis])
    dims = [len(current)]
    while dims[-1] > 0:
        nxt = ra.span_basis(
            [bracket_vec(a, x, y) for x in current for y in current]
        )
        if len(nxt) == dims[-1]:
            break
        dims.append(len(nxt))
        current = nxt
    return dims


def _subspace_lower_central_dims(a: LieAlgebra, basis: list[Vec]) -> list[int]:
    full = ra.span_basis([v[:] for v in basis])
    current = full
    dims = [len(current)]
    while dims[-1] > 0:
        nxt = ra.span_basis([bracket_vec(a, x, y) for x in full for y in current])
        if len(nxt) == dims[-1]:
            break
        dims.append(len(nxt))
        current = nxt
    return dims


def radical(a: LieAlgebra) -> Subspace:
    """Largest solvable ideal, via Cartan: Killing-orthogonal complement of [g,g].

    The result is verified to be a solvable ideal; failure of that check is a
    bug in the computation, not a property of the input.
    """
    if a.dim == 0:
        return Subspace(a, [])
    k = killing_form(a).matrix
    der = derived_subalgebra(a)
    if der.dim_subspace == 0:
        return Subspace(a, ra.span_basis([e.coords for e in a.basis_elements()]))
    rows = [ra.mat_vec(k, d) for d in der.basis]
    rad_basis = ra.nullspace(rows)
    if _subspace_derived_dims(a, rad_basis)[-1] != 0:
        raise RuntimeError("radical verification failed: candidate is not solvable")
    for e in a.basis_elements():
        for v in rad_basis:
            if not ra.span_contains(rad_basis, bracket_vec(a, e.coords, v)):
                raise RuntimeError("radical verification failed: candidate is not an ideal")
    return Subspace(a, rad_basis)


# ---------------------------------------------------------------------------
# twisted frequency tuples
# ---------------------------------------------------------------------------

def canonical_lambda(lam) -> tuple[int, ...]:
    """Scale-and-permutation representative: ascending positive integers, gcd 1."""
    lam = sorted(ra.frac(x) for x in lam)
    if not lam or any(x <= 0 for x in lam):
        raise ValueError("frequency tuple must be nonempty and positive")
    denom_lcm = 1
    for x in lam:
        denom_lcm = denom_lcm * x.denominator // gcd(denom_lcm, x.denominator)
    ints = [int(x * denom_lcm) for x in lam]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return tuple(v // g for v in ints)


def twisted_iso_test(lam, eta) -> tuple[bool, Fraction | None]:
    """Isomorphism test for twisted frequency tuples.

    True iff the multisets {lam_i} and {a * eta_i} agree for some positive
    rational a; the witness a is returned on success.
    """
    lam = sorted(ra.frac(x) for x in lam)
    eta = sorted(ra.frac(x) for x in eta)
    if any(x <= 0 for x in lam + eta):
        raise ValueError("frequency tuples must be strictly positive")
    if len(lam) != len(eta) or not lam:
        return False, None
    a = lam[0] / eta[0]
    if all(lam[i] == a * eta[i] for i in range(len(lam))):
        return True, a
    return False, None


# ---------------------------------------------------------------------------
# Heisenberg extraction from a nilpotent algebra with an ad-invariant form
# ---------------------------------------------------------------------------

def _complement_basis(inside: list[Vec], avoid: list[Vec], dim: int) -> list[Vec]:
    """Greedy complement of span(avoid) inside span(inside)."""
    out: list[Vec] = []
    current = ra.span_basis([v[:] for v in avoid])
    for v in inside:
        if not ra.span_contains(current, v):
            out.append(v)
            current = ra.span_basis(current + [v])
    return out


def _center_of_subspace(a: LieAlgebra, basis: list[Vec]) -> list[Vec]:
    """Elements of span(basis) commuting with all of span(basis)."""
    if not basis:
        return []
    rows: Mat = []
    for w in basis:
        # rows of the map c -> [sum c_i b_i, w]
        cols = [bracket_vec(a, b, w) for b in basis]
        for r_ in range(a.dim):
            rows.append([cols[j][r_] for j in range(len(basis))])
    kern = ra.nullspace(rows)
    out = []
    for c in kern:
        v = ra.zero_vec(a.dim)
        for j, b in enumerate(basis):
            v = ra.vec_add(v, ra.vec_scale(c[j], b))
        out.append(v)
    return ra.span_basis(out)


def _symplectic_darboux(a: LieAlgebra, v_basis: list[Vec], z_vec: Vec, z_scale_index: int):
    """Exact Darboux basis for the bracket pairing [x,y] = omega(x,y)*Z.

    Returns pairs (X_k, Y_k) from span(v_basis) with omega(X_k, Y_k) = 1 and
    all other pairings zero.  omega is read off as the coefficient of z_vec.
    """
    def omega(x, y):
        br = bracket_vec(a, x, y)
        return br[z_scale_index] / z_vec[z_scale_index]

    rest = [v[:] for v in v_basis]
    pairs: list[tuple[Vec, Vec]] = []
    while rest:
        x = rest[0]
        y = next((w for w in rest[1:] if omega(x, w) != 0), None)
        if y is None:
            raise ValueError("bracket pairing is degenerate on the complement")
        y = ra.vec_scale(1 / omega(x, y), y)
        new_rest = []
        for w in rest:
            w2 = ra.vec_sub(w, ra.vec_scale(omega(x, w), y))
            w2 = ra.vec_add(w2, ra.vec_scale(omega(y, w2), x))
            new_rest.append(w2)
        new_rest = ra.span_basis(new_rest)
        pairs.append((x, y))
        rest = new_rest
    return pairs


def heisenberg_decompose(n: LieAlgebra, form) -> tuple[Subspace, Subspace, list[Vec]]:
    """Split a nilpotent algebra as abelian + (line or Heisenberg), form-orthogonally.

    The form must be ad-invariant and positive semidefinite with kernel of
    dimension at most one.  Returns (a_part, h_part, canonical basis of
    h_part); the canonical basis is (Z,) in the abelian case and
    (Z, X1, Y1, ..., Xd, Yd) with [Xk,Yk] = Z otherwise.  If the form is
    degenerate, its kernel is the center of h_part.
    """
    from .forms import ad_invariance_residual  # cycle-free: forms imports lie_core only

    if _subspace_lower_central_dims(n, [e.coords for e in n.basis_elements()])[-1] != 0:
        raise ValueError("algebra is not nilpotent")
    if ad_invariance_residual(form) != 0:
        raise ValueError("form is not ad-invariant")
    pos, neg, zero = ra.inertia(form.matrix)
    if neg > 0 or zero > 1:
        raise ValueError("form must be positive semidefinite with kernel dimension <= 1")

    kernel = ra.nullspace(form.matrix)
    full = [e.coords for e in n.basis_elements()]
    der = derived_subalgebra(n)

    if der.dim_subspace == 0:
        # abelian: h is a line, a any (orthogonal, in the definite case) complement
        if zero == 1:
            z_vec = kernel[0]
        else:
            z_vec = full[0]
        if zero == 1:
            a_basis = _complement_basis(full, [z_vec], n.dim)
        else:
            rows = [ra.mat_vec(form.matrix, z_vec)]
            a_basis = ra.nullspace(rows)
        return Subspace(n, a_basis), Subspace(n, [z_vec]), [z_vec]

    # non-abelian: kernel is forced to be the derived line R*Z
    if zero != 1:
        raise ValueError("non-abelian nilradical needs a degenerate form (kernel = center line)")
    if der.dim_subspace != 1 or not ra.span_contains(kernel, der.basis[0]):
        raise ValueError("derived algebra is not the kernel line; not a Heisenberg-type input")
    z_vec = kernel[0]
    z_n = _center_of_subspace(n, full)
    # h := form-orthogonal complement of the center, a := complement of R*Z in the center
    rows = [ra.mat_vec(form.matrix, z) for z in z_n]
    h_basis = ra.nullspace(ra.span_basis(rows)) if ra.span_basis(rows) else full
    a_basis = _complement_basis(z_n, [z_vec], n.dim)

    idx = next(i for i, c in enumerate(z_vec) if c != 0)
    v_basis = _complement_basis(h_basis, [z_vec], n.dim)
    pairs = _symplectic_darboux(n, v_basis, z_vec, idx)
    canonical = [z_vec]
    for x, y in pairs:
        canonical += [x, y]
    return Subspace(n, a_basis), Subspace(n, ra.span_basis(h_basis)), canonical


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ClassificationResult:
    in_classification: bool
    k_dim: int = 0
    a_dim: int = 0
    s_kind: str = "trivial"  # trivial | aff | heisenberg | twisted_heisenberg | sl2
    s_d: int | None = None
    s_lambda: tuple[int, ...] | None = None
    witness_basis: Mat | None = None  # columns = certificate basis in input coordinates
    reason: str = ""

    def s_dim(self) -> int:
        if self.s_kind == "trivial":
            return 0
        if self.s_kind == "aff":
            return 2
        if self.s_kind == "sl2":
            return 3
        if self.s_kind == "heisenberg":
            return 2 * self.s_d + 1
        return 2 * self.s_d + 2

    def summary(self) -> str:
        if not self.in_classification:
            return f"not in classification ({self.reason})"
        s = self.s_kind
        if self.s_kind == "heisenberg":
            s = f"heisenberg(d={self.s_d})"
        elif self.s_kind == "twisted_heisenberg":
            s = f"twisted_heisenberg(lambda={list(self.s_lambda)})"
        return f"k_dim={self.k_dim}, a_dim={self.a_dim}, s={s}"


def _fail(reason: str) -> ClassificationResult:
    return ClassificationResult(in_classification=False, reason=reason)


def _restrict_to_subalgebra(g: LieAlgebra, basis: list[Vec], name=""):
    """LieAlgebra on the given basis, or None if it is not closed under bracket."""
    r = len(basis)
    mat_basis = [[basis[j][i] for j in range(r)] for i in range(g.dim)]
    triples = []
    for i in range(r):
        for j in range(i + 1, r):
            br = bracket_vec(g, basis[i], basis[j])
            sol = ra.solve(mat_basis, br)
            if sol is None:
                return None
            for k, v in enumerate(sol):
                if v != 0:
                    triples.append((i, j, k, v))
    return LieAlgebra.from_triples(r, [f"b{i}" for i in range(r)], triples, name=name)


def _centroid_basis(sub: LieAlgebra) -> list[Mat]:
    """Basis of {phi in End(sub) : phi ad_x = ad_x phi for all x}."""
    from .lie_core import ad_matrix

    n = sub.dim
    ads = [ad_matrix(e) for e in sub.basis_elements()]
    rows: Mat = []
    for ad in ads:
        # (ad . phi - phi . ad) = 0, row per matrix entry, unknowns phi (n*n)
        for i in range(n):
            for j in range(n):
                row = ra.zero_vec(n * n)
                for t in range(n):
                    row[t * n + j] += ad[i][t]
                    row[i * n + t] -= ad[t][j]
                rows.append(row)
    kern = ra.nullspace(rows)
    return [[v[i * n:(i + 1) * n] for i in range(n)] for v in kern]


def _rational_eigen_split(phi: Mat) -> list[tuple[Fraction, list[Vec]]] | None:
    """Eigenspaces of a matrix whose min poly splits into distinct rational roots."""
    import sympy

    n = len(phi)
    coeffs = ra.charpoly(phi)
    x = sympy.Symbol("x")
    poly = sum(sympy.Rational(c.numerator, c.denominator) * x ** (n - i) for i, c in enumerate(coeffs))
    factors = sympy.factor_list(sympy.Poly(poly, x))[1]
    roots: list[Fraction] = []
    for fac, _mult in factors:
        fac = sympy.Poly(fac, x)
        if fac.degree() != 1:
            return None
        a1, a0 = fac.all_coeffs()
        roots.append(Fraction(-sympy.Rational(a0, a1)))
    out = []
    for root in sorted(set(roots)):
        shifted = [[phi[i][j] - (root if i == j else 0) for j in range(n)] for i in range(n)]
        space = ra.nullspace(shifted)
        out.append((root, space))
    if sum(len(s) for _, s in out) != n:
        return None  # not semisimple over Q
    return out


def _split_simple_ideals(g: LieAlgebra, l_basis: list[Vec]) -> list[list[Vec]] | None:
    """Split a semisimple ideal (given by a basis in g) into simple ideals."""
    sub = _restrict_to_subalgebra(g, l_basis)
    if sub is None:
        return None
    cent = _centroid_basis(sub)
    if len(cent) == 1:
        return [l_basis]
    rng = random.Random(7)
    for _ in range(24):
        phi = ra.zeros(sub.dim, sub.dim)
        for b in cent:
            c = Fraction(rng.randint(-9, 9))
            phi = ra.mat_add(phi, ra.mat_scale(c, b))
        split = _rational_eigen_split(phi)
        if split is not None and len(split) == len(cent):
            ideals = []
            for _root, space in split:
                ideal = []
                for c in space:
                    v = ra.zero_vec(g.dim)
                    for j in range(sub.dim):
                        v = ra.vec_add(v, ra.vec_scale(c[j], l_basis[j]))
                    ideal.append(v)
                ideals.append(ra.span_basis(ideal))
            return ideals
    return None


def _diophantine_point(eq) -> list[Fraction] | None:
    """A nonzero integer point of a homogeneous quadratic, or None."""
    from sympy.solvers.diophantine import diophantine

    try:
        sols = diophantine(eq)
    except NotImplementedError:
        return None
    trials = [(1, 0), (0, 1), (1, 1), (1, 2), (2, 1), (1, -1), (3, 2)]
    for sol in sols:
        symbols = sorted(
            set().union(*(getattr(e, "free_symbols", set()) for e in sol)), key=str
        )
        candidates = [dict(zip(symbols, t)) for t in trials] if symbols else [{}]
        for subs in candidates:
            vals = [e.subs(subs) if hasattr(e, "subs") else e for e in sol]
            try:
                vals = [Fraction(int(v)) for v in vals]
            except (TypeError, ValueError):
                continue
            if any(v != 0 for v in vals):
                return vals
    return None


def _isotropic_vector(diag: list[Fraction]) -> Vec | None:
    """Nontrivial rational zero of d1 x^2 + d2 y^2 + d3 z^2, or None."""
    from sympy.abc import x, y, z

    scale = 1
    for d in diag:
        scale = scale * d.denominator // gcd(scale, d.denominator)
    ints = [int(d * scale) for d in diag]
    return _diophantine_point(ints[0] * x ** 2 + ints[1] * y ** 2 + ints[2] * z ** 2)


def _sl2_certificate(g: LieAlgebra, ideal: list[Vec]) -> list[Vec] | None:
    """Exact (e, f, h) basis of a 3-dimensional ideal with Killing signature (2,1)."""
    sub = _restrict_to_subalgebra(g, ideal)
    if sub is None or sub.dim != 3:
        return None
    k = killing_form(sub).matrix
    if ra.inertia(k) != (2, 1, 0):
        return None
    c, d = ra.congruence_diagonalize(k)
    diag = [d[i][i] for i in range(3)]
    iso = _isotropic_vector(diag)
    if iso is None:
        return None
    e_sub = ra.mat_vec(c, iso)  # Killing-isotropic, hence ad-nilpotent in sl2
    if ra.is_zero_vec(e_sub):
        return None

    from .lie_core import ad_matrix

    ad_e = ad_matrix(sub.element(e_sub))
    # h with [h, e] = 2e  <=>  ad_e h = -2e
    h_sub = ra.solve(ad_e, ra.vec_scale(Fraction(-2), e_sub))
    if h_sub is None:
        return None
    ad_h = ad_matrix(sub.element(h_sub))
    # f with [e, f] = h and [h, f] = -2f (linear in f)
    rows: Mat = []
    rhs: Vec = []
    for i in range(3):
        rows.append(ad_e[i][:])
        rhs.append(h_sub[i])
    two = [[ad_h[i][j] + (2 if i == j else 0) for j in range(3)] for i in range(3)]
    for i in range(3):
        rows.append(two[i][:])
        rhs.append(Fraction(0))
    f_sub = ra.solve(rows, rhs)
    if f_sub is None:
        return None
    # verify the table exactly
    if bracket_vec(sub, e_sub, f_sub) != h_sub:
        return None
    if bracket_vec(sub, h_sub, e_sub) != ra.vec_scale(Fraction(2), e_sub):
        return None
    if bracket_vec(sub, h_sub, f_sub) != ra.vec_scale(Fraction(-2), f_sub):
        return None
    if ra.rank([e_sub, f_sub, h_sub]) != 3:
        return None

    def up(v_sub):
        v = ra.zero_vec(g.dim)
        for j in range(3):
            v = ra.vec_add(v, ra.vec_scale(v_sub[j], ideal[j]))
        return v

    return [up(e_sub), up(f_sub), up(h_sub)]


def _even_charpoly_roots(m: Mat) -> list[tuple[Fraction, int]] | None:
    """For a matrix with spectrum {±i mu_k}: rational values mu_k^2 with multiplicity."""
    import sympy

    n = len(m)
    if n % 2 != 0:
        return None
    coeffs = ra.charpoly(m)
    if any(coeffs[i] != 0 for i in range(1, n + 1, 2)):
        return None
    # p(x) = prod (x^2 + mu^2) = e(y) at y = x^2 with e(y) = prod (y + mu^2)
    e_coeffs = [coeffs[i] for i in range(0, n + 1, 2)]
    y = sympy.Symbol("y")
    deg = len(e_coeffs) - 1
    poly = sum(
        sympy.Rational(c.numerator, c.denominator) * y ** (deg - i)
        for i, c in enumerate(e_coeffs)
    )
    factors = sympy.factor_list(sympy.Poly(poly, y))[1]
    out: list[tuple[Fraction, int]] = []
    for fac, mult in factors:
        fac = sympy.Poly(fac, y)
        if fac.degree() != 1:
            return None
        a1, a0 = fac.all_coeffs()
        root = Fraction(sympy.Rational(a0, a1))  # e(y) root is -mu^2, so mu^2 = a0/a1
        if root <= 0:
            return None
        out.append((root, int(mult)))
    out.sort()
    return out


def _sum_of_two_squares(tau: Fraction) -> tuple[Fraction, Fraction] | None:
    """Rational (x, y) with x^2 + y^2 = tau, or None."""
    if tau < 0:
        return None
    if tau == 0:
        return Fraction(0), Fraction(0)
    r = ra.rational_sqrt(tau)
    if r is not None:
        return r, Fraction(0)
    from sympy.abc import x, y, z

    num, den = tau.numerator, tau.denominator
    # x^2 + y^2 = tau  <=>  X^2 + Y^2 - (num*den) Z^2 = 0 with x = X/(den Z)
    pt = _diophantine_point(x ** 2 + y ** 2 - num * den * z ** 2)
    if pt is None or pt[2] == 0:
        return None
    return pt[0] / (den * pt[2]), pt[1] / (den * pt[2])


class _NotTwisted(Exception):
    pass


def _twisted_certificate(g: LieAlgebra, r_basis: list[Vec], d_basis: list[Vec]):
    """Canonical twisted-Heisenberg basis inside the radical, plus lambda and a-part.

    r_basis spans the radical, d_basis its derived algebra (assumed Heisenberg-
    like: [D,D] one-dimensional and central).  Raises _NotTwisted when the
    exact recognition cannot be completed over the rationals.
    """
    dd = ra.span_basis([bracket_vec(g, x, y) for x in d_basis for y in d_basis])
    if len(dd) != 1:
        raise _NotTwisted("derived algebra of D is not a line")
    z0 = dd[0]

    # centralizer of D inside r
    rows: Mat = []
    r_mat = [[r_basis[j][i] for j in range(len(r_basis))] for i in range(g.dim)]
    for w in d_basis:
        cols = [bracket_vec(g, b, w) for b in r_basis]
        for i in range(g.dim):
            rows.append([cols[j][i] for j in range(len(r_basis))])
    cent_coeff = ra.nullspace(rows)
    cent = ra.span_basis([ra.mat_vec(r_mat, c) for c in cent_coeff])
    if len(cent) + len(d_basis) + 1 != len(r_basis) + 1:
        # expect r = cent + D with cent ∩ D = R*Z, i.e. dims add up to dim r + 1
        raise _NotTwisted("centralizer of the nilpotent part has unexpected dimension")

    t0 = next(
        (v for v in r_basis if not ra.span_contains(ra.span_basis(cent + d_basis), v)),
        None,
    )
    if t0 is None:
        raise _NotTwisted("no twist generator outside the nilpotent part")

    # quotient D / R*Z and the induced action of ad_{t0}
    v_basis = _complement_basis(d_basis, [z0], g.dim)
    lift = [[v[i] for v in v_basis] for i in range(g.dim)]  # columns = lifts
    dmat = [[b[i] for b in v_basis + [z0]] for i in range(g.dim)]

    def to_quotient(w: Vec) -> Vec | None:
        sol = ra.solve(dmat, w)
        if sol is None:
            return None
        return sol[: len(v_basis)]

    m_rows = []
    for v in v_basis:
        img = to_quotient(bracket_vec(g, t0, v))
        if img is None:
            raise _NotTwisted("twist generator does not preserve the nilpotent part")
        m_rows.append(img)
    m = [[m_rows[j][i] for j in range(len(v_basis))] for i in range(len(v_basis))]

    roots = _even_charpoly_roots(m)
    if roots is None:
        raise _NotTwisted("twist action spectrum is not of rotation type over Q")

    mu1_sq = roots[0][0]
    ratios = []
    for musq, mult in roots:
        u = ra.rational_sqrt(musq / mu1_sq)
        if u is None:
            raise _NotTwisted("frequency ratios are not rational")
        ratios.append((u, mult))
    lam_raw: list[Fraction] = []
    for u, mult in ratios:
        lam_raw += [u] * mult
    lam_canon = canonical_lambda(lam_raw)
    # scale t so that the induced action has frequencies exactly lam_canon
    mu1 = ra.rational_sqrt(mu1_sq)
    if mu1 is None:
        raise _NotTwisted("twist normalization needs an irrational square root")
    scale = Fraction(lam_canon[0]) / mu1
    t1 = ra.vec_scale(scale, t0)
    m = ra.mat_scale(scale, m)

    lam_groups: list[tuple[Fraction, int]] = []
    for (musq, mult) in roots:
        u = ra.rational_sqrt(musq / mu1_sq)
        lam_groups.append((u * Fraction(lam_canon[0]), mult))

    z_idx = next(i for i, c in enumerate(z0) if c != 0)

    def omega_q(uq: Vec, vq: Vec) -> Fraction:
        xu = ra.mat_vec(lift, uq)
        xv = ra.mat_vec(lift, vq)
        return bracket_vec(g, xu, xv)[z_idx] / z0[z_idx]

    # plane extraction per frequency group, in the quotient
    nq = len(v_basis)
    planes: list[tuple[Vec, Vec, Fraction]] = []  # (x_quot, y_quot, lambda)
    z_unit: Fraction | None = None  # omega-value fixed by the first plane
    for lam_k, mult in lam_groups:
        shifted = ra.mat_mul(m, m)
        for i in range(nq):
            shifted[i][i] += lam_k * lam_k
        group = ra.nullspace(shifted)
        if len(group) != 2 * mult:
            raise _NotTwisted("eigenplane dimensions do not match multiplicities")
        remaining = group
        for done in range(mult):
            v0 = remaining[0]
            jv0 = ra.vec_scale(1 / lam_k, ra.mat_vec(m, v0))
            c0 = omega_q(v0, jv0)
            if c0 == 0:
                raise _NotTwisted("bracket pairing degenerate on an eigenplane")
            if z_unit is None:
                z_unit = c0 / lam_k
                x_q, y_q = v0, jv0
            else:
                tau = (lam_k * z_unit) / c0
                pt = _sum_of_two_squares(tau)
                if pt is None:
                    raise _NotTwisted("plane normalization has no rational point")
                xq_, yq_ = pt
                x_q = ra.vec_add(ra.vec_scale(xq_, v0), ra.vec_scale(yq_, jv0))
                y_q = ra.vec_scale(1 / lam_k, ra.mat_vec(m, x_q))
            planes.append((x_q, y_q, lam_k))
            # omega-orthogonal (hence m-invariant) complement of the plane
            # inside the remaining group: intersect properly, in group coords
            rows = [[omega_q(rv, w) for rv in remaining] for w in (x_q, y_q)]
            coeffs = ra.nullspace(rows)
            new_remaining = []
            for s in coeffs:
                v = ra.zero_vec(nq)
                for t, c in enumerate(s):
                    v = ra.vec_add(v, ra.vec_scale(c, remaining[t]))
                new_remaining.append(v)
            remaining = ra.span_basis(new_remaining)
            if len(remaining) != 2 * (mult - done - 1):
                raise _NotTwisted("plane complement has the wrong dimension")
    if z_unit is None:
        raise _NotTwisted("no planes found")

    # z rescaled so that [X_k, Y_k] = lam_k * Z exactly
    z_vec = ra.vec_scale(z_unit, z0)

    # lift the planes and repair T's residual Z-components
    xs = [ra.mat_vec(lift, p[0]) for p in planes]
    ys = [ra.mat_vec(lift, p[1]) for p in planes]
    lams = [p[2] for p in planes]
    t_new = t1
    for k in range(len(planes)):
        alpha = ra.solve(dmat, ra.vec_sub(bracket_vec(g, t1, xs[k]), ra.vec_scale(lams[k], ys[k])))
        beta = ra.solve(dmat, ra.vec_add(bracket_vec(g, t1, ys[k]), ra.vec_scale(lams[k], xs[k])))
        if alpha is None or beta is None or any(c != 0 for c in alpha[:-1]) or any(c != 0 for c in beta[:-1]):
            raise _NotTwisted("twist action is not plane-diagonal after normalization")
        a_k = alpha[-1] * z0[z_idx] / z_vec[z_idx]
        b_k = beta[-1] * z0[z_idx] / z_vec[z_idx]
        t_new = ra.vec_add(t_new, ra.vec_scale(a_k / lams[k], ys[k]))
        t_new = ra.vec_sub(t_new, ra.vec_scale(b_k / lams[k], xs[k]))

    order = sorted(range(len(planes)), key=lambda k: lams[k])
    s_basis = [t_new, z_vec]
    lam_sorted = []
    for k in order:
        s_basis += [xs[k], ys[k]]
        lam_sorted.append(lams[k])
    a_basis = _complement_basis(cent, [z_vec], g.dim)
    return s_basis, tuple(int(x) for x in lam_sorted), a_basis


def classify_decomposition(g: LieAlgebra) -> ClassificationResult:
    """Attempt to exhibit g = k + a + s with a certificate basis.

    k compact semisimple, a abelian, s one of the five target shapes; the
    summands must be ideals.  On success the witness basis induces exactly the
    canonical block table; anything that cannot be certified over the
    rationals is reported as not in classification.
    """
    try:
        return _classify(g)
    except _NotTwisted as exc:
        return _fail(str(exc))
    except (ValueError, RuntimeError, ZeroDivisionError) as exc:
        return _fail(f"classification aborted: {exc}")


def _classify(g: LieAlgebra) -> ClassificationResult:
    n = g.dim
    if n == 0:
        return ClassificationResult(True, 0, 0, "trivial", witness_basis=[])

    rad = radical(g)
    r_basis = [v[:] for v in rad.basis]

    if rad.dim_subspace == n:
        l_ideals: list[list[Vec]] = []
    else:
        # For the target shapes the Levi factor is an ideal commuting with the
        # radical, hence equals the derived algebra of the radical's centralizer.
        rows: Mat = []
        for v in r_basis:
            cols = [bracket_vec(g, e.coords, v) for e in g.basis_elements()]
            for i in range(n):
                rows.append([cols[j][i] for j in range(n)])
        cent = ra.nullspace(rows) if rows else [e.coords for e in g.basis_elements()]
        l_basis = ra.span_basis(
            [bracket_vec(g, x, y) for x in cent for y in cent]
        )
        if len(l_basis) + rad.dim_subspace != n or ra.rank(
            [v[:] for v in l_basis + r_basis]
        ) != n:
            return _fail("semisimple part does not complement the radical")
        for x in l_basis:
            for y in r_basis:
                if not ra.is_zero_vec(bracket_vec(g, x, y)):
                    return _fail("semisimple part does not commute with the radical")
        ideals = _split_simple_ideals(g, l_basis)
        if ideals is None:
            return _fail("semisimple part does not split into rational simple ideals")
        l_ideals = ideals

    # sort the simple ideals into compact ones and at most one sl2
    k_cols: list[Vec] = []
    sl2_cols: list[Vec] | None = None
    for ideal in l_ideals:
        sub = _restrict_to_subalgebra(g, ideal)
        if sub is None:
            return _fail("simple ideal candidate is not a subalgebra")
        pos, neg, zero = ra.inertia(killing_form(sub).matrix)
        if zero != 0:
            return _fail("ideal in the semisimple part has degenerate Killing form")
        if pos == 0:
            k_cols.extend(ideal)
            continue
        if sl2_cols is not None:
            return _fail("more than one noncompact simple ideal")
        cert = _sl2_certificate(g, ideal)
        if cert is None:
            return _fail("noncompact simple ideal is not certifiably sl2 over Q")
        sl2_cols = cert

    der_r = ra.span_basis([bracket_vec(g, x, y) for x in r_basis for y in r_basis])

    s_kind = "trivial"
    s_d = None
    s_lambda = None
    s_cols: list[Vec] = []
    a_cols: list[Vec] = []

    if len(der_r) == 0:
        # abelian radical must be central
        for e in g.basis_elements():
            for v in r_basis:
                if not ra.is_zero_vec(bracket_vec(g, e.coords, v)):
                    return _fail("abelian radical is not central")
        a_cols = r_basis
        if sl2_cols is not None:
            s_kind, s_cols = "sl2", sl2_cols
    else:
        if sl2_cols is not None:
            return _fail("both an sl2 ideal and a nonabelian radical are present")
        if len(der_r) == 1:
            y_vec = der_r[0]
            central = all(ra.is_zero_vec(bracket_vec(g, y_vec, v)) for v in r_basis)
            if central:
                # Heisenberg-type radical
                if _subspace_lower_central_dims(g, r_basis)[-1] != 0:
                    return _fail("radical with central derived line is not nilpotent")
                z_r = _center_of_subspace(g, r_basis)
                if not ra.span_contains(z_r, y_vec):
                    return _fail("derived line escapes the center")
                a_cols = _complement_basis(z_r, [y_vec], g.dim)
                v_basis = _complement_basis(r_basis, z_r, g.dim)
                z_idx = next(i for i, c in enumerate(y_vec) if c != 0)
                pairs = _symplectic_darboux(g, v_basis, y_vec, z_idx)
                s_cols = [y_vec]
                for x, y in pairs:
                    s_cols += [x, y]
                s_kind, s_d = "heisenberg", len(pairs)
            else:
                # affine: [x, Y] = c(x) Y defines a functional
                cs = []
                for b in r_basis:
                    br = bracket_vec(g, b, y_vec)
                    sol = ra.solve([[y] for y in y_vec], br)
                    if sol is None:
                        return _fail("derived line is not an eigendirection of the radical")
                    cs.append(sol[0])
                x0 = None
                r_mat = [[r_basis[j][i] for j in range(len(r_basis))] for i in range(g.dim)]
                for j, c in enumerate(cs):
                    if c != 0:
                        x0 = ra.vec_scale(1 / c, r_basis[j])
                        break
                rows = [list(cs)]
                for i in range(g.dim):
                    rows.append([bracket_vec(g, x0, r_basis[j])[i] for j in range(len(r_basis))])
                a_coeff = ra.nullspace(rows)
                a_cols = ra.span_basis([ra.mat_vec(r_mat, c) for c in a_coeff])
                s_cols = [x0, y_vec]
                s_kind = "aff"
        else:
            # twisted Heisenberg candidate
            if _subspace_derived_dims(g, r_basis)[-1] != 0:
                return _fail("radical is not solvable")  # defensive; radical() verified this
            if _subspace_lower_central_dims(g, der_r)[-1] != 0:
                return _fail("derived algebra of the radical is not nilpotent")
            s_cols, lam, a_cols = _twisted_certificate(g, r_basis, der_r)
            s_kind, s_d, s_lambda = "twisted_heisenberg", len(lam), lam

    if s_kind == "heisenberg":
        s_d = s_d
    witness_cols = k_cols + a_cols + s_cols
    if len(witness_cols) != n or ra.rank([v[:] for v in witness_cols]) != n:
        return _fail("certificate basis is not a basis")
    witness = [[witness_cols[j][i] for j in range(n)] for i in range(n)]
    result = ClassificationResult(
        True,
        k_dim=len(k_cols),
        a_dim=len(a_cols),
        s_kind=s_kind,
        s_d=s_d,
        s_lambda=s_lambda,
        witness_basis=witness,
    )
    if not _verify_certificate(g, result):
        return _fail("certificate verification failed")
    return result


def _canonical_s_algebra(result: ClassificationResult) -> LieAlgebra | None:
    if result.s_kind == "trivial":
        return None
    if result.s_kind == "aff":
        return aff()
    if result.s_kind == "sl2":
        return sl2()
    if result.s_kind == "heisenberg":
        return heisenberg(result.s_d)
    return twisted_heisenberg(result.s_lambda)


def _verify_certificate(g: LieAlgebra, result: ClassificationResult) -> bool:
    """Transported table must be block diagonal with exactly canonical blocks."""
    n = g.dim
    transported = transport_structure(g, result.witness_basis)
    kd, ad_ = result.k_dim, result.a_dim
    s_alg = _canonical_s_algebra(result)
    sd = 0 if s_alg is None else s_alg.dim
    if kd + ad_ + sd != n:
        return False
    blocks = [(0, kd), (kd, kd + ad_), (kd + ad_, n)]
    for i in range(n):
        for j in range(i + 1, n):
            br = transported.basis_bracket(i, j)
            same = next((b for b in blocks if b[0] <= i < b[1] and b[0] <= j < b[1]), None)
            if same is None:
                if not ra.is_zero_vec(br):
                    return False
            elif any(br[t] != 0 for t in range(n) if not (same[0] <= t < same[1])):
                return False
    # a block abelian
    for i in range(kd, kd + ad_):
        for j in range(i + 1, kd + ad_):
            if not ra.is_zero_vec(transported.basis_bracket(i, j)):
                return False
    # s block exactly canonical
    if s_alg is not None:
        off = kd + ad_
        for i in range(sd):
            for j in range(i + 1, sd):
                want = s_alg.basis_bracket(i, j)
                got = transported.basis_bracket(off + i, off + j)
                if got[off:off + sd] != want or any(
                    got[t] != 0 for t in range(n) if not (off <= t < off + sd)
                ):
                    return False
    # k block compact semisimple
    if kd:
        k_cols = [[result.witness_basis[i][j] for i in range(n)] for j in range(kd)]
        sub = _restrict_to_subalgebra(g, k_cols)
        if sub is None:
            return False
        pos, neg, zero = ra.inertia(killing_form(sub).matrix)
        if pos != 0 or zero != 0:
            return False
    return True
