"""Curvature and holonomy of reductive homogeneous semi-Riemannian models.

A ReductiveSpace is (g, h, m, metric) with g = m + h, [h, m] contained in m,
and the metric ad(h)-invariant on m.  Elements are handled as exact coordinate
vectors in the m-basis.  The full curvature tensor is defined through the
holonomy-generator operator

    op(x, y) = [Lambda(x), Lambda(y)] - Lambda([x,y]_m) - ad([x,y]_h)

with R(x,y,w,z) := <op(x,y) w, z>; this orientation reproduces the diagonal
curvature formula (the independent oracle kept in curvature_diag) exactly on
all catalog spaces.  Ricci and scalar curvature are metric contractions and
stay exact over the rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import rational as ra
from .lie_core import LieAlgebra, Subspace, SymBilinearForm, bracket_vec
from .rational import Mat, Vec


@dataclass(frozen=True)
class ReductiveSpace:
    g: LieAlgebra
    h: Subspace
    m: Subspace
    metric: Mat  # Gram matrix in the m-basis, nondegenerate

    @property
    def dim_m(self) -> int:
        return self.m.dim_subspace


class _SpaceData:
    """Cached projections and structure data for a reductive space."""

    def __init__(self, space: ReductiveSpace):
        self.space = space
        g = space.g
        n = g.dim
        r = space.m.dim_subspace
        s = space.h.dim_subspace
        cols = space.m.basis + space.h.basis
        if len(cols) != n or ra.rank([c[:] for c in cols]) != n:
            raise ValueError("m and h do not form a complement in g")
        self.n, self.r, self.s = n, r, s
        self.basis_mat = [[cols[j][i] for j in range(n)] for i in range(n)]
        self.basis_inv = ra.inv(self.basis_mat)
        self.gram = space.metric
        if ra.det(self.gram) == 0:
            raise ValueError("metric is degenerate")
        self.gram_inv = ra.inv(self.gram)

        self._tables = None
        self._op_basis = None

    def op_basis(self):
        """Curvature operators G*op(e_i, e_j) and op(e_i, e_j) on basis pairs."""
        if self._op_basis is None:
            r = self.r
            ops = [[None] * r for _ in range(r)]
            gops = [[None] * r for _ in range(r)]
            for i in range(r):
                for j in range(i, r):
                    op = _curvature_operator_raw(self, _unit(r, i), _unit(r, j))
                    ops[i][j] = op
                    ops[j][i] = ra.mat_scale(Fraction(-1), op)
                    gops[i][j] = ra.mat_mul(self.gram, op)
                    gops[j][i] = ra.mat_scale(Fraction(-1), gops[i][j])
            self._op_basis = (ops, gops)
        return self._op_basis

    def to_g(self, x_m: Vec) -> Vec:
        v = ra.zero_vec(self.n)
        for j in range(self.r):
            v = ra.vec_add(v, ra.vec_scale(x_m[j], self.space.m.basis[j]))
        return v

    def tables(self):
        """Basis-pair tables: m/h parts of brackets, U values, Lambda matrices,
        ad_h generator matrices.  Everything downstream is (bi)linear in these."""
        if self._tables is not None:
            return self._tables
        r, s = self.r, self.s
        br_m = [[None] * r for _ in range(r)]
        br_h = [[None] * r for _ in range(r)]
        for i in range(r):
            for j in range(i, r):
                m_part, h_part = self._bracket_split_raw(_unit(r, i), _unit(r, j))
                br_m[i][j] = m_part
                br_h[i][j] = h_part
                br_m[j][i] = ra.vec_scale(Fraction(-1), m_part)
                br_h[j][i] = ra.vec_scale(Fraction(-1), h_part)
        u_b = [[None] * r for _ in range(r)]
        for i in range(r):
            for j in range(i, r):
                rhs = []
                for zi in range(r):
                    zx = br_m[zi][i]
                    zy = br_m[zi][j]
                    rhs.append(
                        (ra.dot(zx, ra.mat_vec(self.gram, _unit(r, j)))
                         + ra.dot(_unit(r, i), ra.mat_vec(self.gram, zy))) / 2
                    )
                val = ra.mat_vec(self.gram_inv, rhs)
                u_b[i][j] = val
                u_b[j][i] = val
        lam_b = []
        for i in range(r):
            cols = [ra.vec_add(ra.vec_scale(Fraction(1, 2), br_m[i][j]), u_b[i][j]) for j in range(r)]
            lam_b.append([[cols[j][t] for j in range(r)] for t in range(r)])
        ad_h_b = [self.ad_h_on_m(_unit(s, t)) for t in range(s)]
        self._tables = (br_m, br_h, u_b, lam_b, ad_h_b)
        return self._tables

    def _bracket_split_raw(self, x_m: Vec, y_m: Vec) -> tuple[Vec, Vec]:
        br = bracket_vec(self.space.g, self.to_g(x_m), self.to_g(y_m))
        return self.split(br)

    def split(self, v: Vec) -> tuple[Vec, Vec]:
        c = ra.mat_vec(self.basis_inv, v)
        return c[: self.r], c[self.r:]

    def to_m_coords(self, v: Vec) -> Vec:
        m_part, h_part = self.split(v)
        if any(c != 0 for c in h_part):
            raise ValueError("vector has a nonzero h-component")
        return m_part

    def bracket_split(self, x_m: Vec, y_m: Vec) -> tuple[Vec, Vec]:
        """[x, y] for x, y in m, split into (m-part, h-part) coordinates."""
        br_m, br_h, _, _, _ = self.tables()
        r = self.r
        out_m = ra.zero_vec(r)
        out_h = ra.zero_vec(self.s)
        for i in range(r):
            if x_m[i] == 0:
                continue
            for j in range(r):
                c = x_m[i] * y_m[j]
                if c != 0 and i != j:
                    out_m = ra.vec_add(out_m, ra.vec_scale(c, br_m[i][j]))
                    out_h = ra.vec_add(out_h, ra.vec_scale(c, br_h[i][j]))
        return out_m, out_h

    def pair(self, x_m: Vec, y_m: Vec) -> Fraction:
        return ra.dot(x_m, ra.mat_vec(self.gram, y_m))

    def ad_h_on_m(self, h_coords: Vec) -> Mat:
        """Matrix on m of ad_W for W = sum h_coords * h-basis."""
        w = ra.zero_vec(self.n)
        for j in range(self.s):
            w = ra.vec_add(w, ra.vec_scale(h_coords[j], self.space.h.basis[j]))
        cols = []
        for j in range(self.r):
            br = bracket_vec(self.space.g, w, self.space.m.basis[j])
            m_part, h_part = self.split(br)
            if any(c != 0 for c in h_part):
                raise ValueError("[h, m] is not contained in m")
            cols.append(m_part)
        return [[cols[j][i] for j in range(self.r)] for i in range(self.r)]


def _unit(n: int, i: int) -> Vec:
    v = ra.zero_vec(n)
    v[i] = Fraction(1)
    return v


_CACHE: dict[int, _SpaceData] = {}


def _data(space: ReductiveSpace) -> _SpaceData:
    key = id(space)
    if key not in _CACHE:
        _CACHE[key] = _SpaceData(space)
    return _CACHE[key]


def reductive_space(g: LieAlgebra, h_basis: list[Vec], m_basis: list[Vec], metric: Mat) -> ReductiveSpace:
    """Validated constructor: complement, subalgebra, [h,m] in m, ad(h)-invariant metric."""
    space = ReductiveSpace(g, Subspace(g, h_basis), Subspace(g, m_basis), metric)
    data = _data(space)
    for w in h_basis:
        for w2 in h_basis:
            br = bracket_vec(g, w, w2)
            if not ra.span_contains(h_basis, br):
                raise ValueError("h is not a subalgebra")
    r = data.r
    for hi in range(len(h_basis)):
        hv = ra.zero_vec(len(h_basis))
        hv[hi] = Fraction(1)
        ad_w = data.ad_h_on_m(hv)  # also checks [h, m] in m
        # <[W,X],Y> + <X,[W,Y]> = 0
        ga = ra.mat_mul(data.gram, ad_w)
        for i in range(r):
            for j in range(r):
                if ga[i][j] + ga[j][i] != 0:
                    raise ValueError("metric is not ad(h)-invariant")
    return space


def u_map(space: ReductiveSpace, x_m: Vec, y_m: Vec) -> Vec:
    """U(x,y): 2<U(x,y),z> = <[z,x]_m, y> + <x, [z,y]_m> for all z in m."""
    data = _data(space)
    _, _, u_b, _, _ = data.tables()
    r = data.r
    out = ra.zero_vec(r)
    for i in range(r):
        if x_m[i] == 0:
            continue
        for j in range(r):
            c = x_m[i] * y_m[j]
            if c != 0:
                out = ra.vec_add(out, ra.vec_scale(c, u_b[i][j]))
    return out


def nabla_at_base(space: ReductiveSpace, x_m: Vec, y_m: Vec) -> Vec:
    """Levi-Civita derivative at the base point: -1/2 [x,y]_m + U(x,y)."""
    data = _data(space)
    xy_m, _ = data.bracket_split(x_m, y_m)
    return ra.vec_add(ra.vec_scale(Fraction(-1, 2), xy_m), u_map(space, x_m, y_m))


def lambda_matrix(space: ReductiveSpace, x_m: Vec) -> Mat:
    """Lambda(x) y = 1/2 [x,y]_m + U(x,y), as a matrix on m; metric-skew."""
    data = _data(space)
    _, _, _, lam_b, _ = data.tables()
    r = data.r
    out = ra.zeros(r, r)
    for i in range(r):
        if x_m[i] != 0:
            out = ra.mat_add(out, ra.mat_scale(x_m[i], lam_b[i]))
    return out


def _curvature_operator_raw(data: "_SpaceData", x_m: Vec, y_m: Vec) -> Mat:
    _, _, _, _, ad_h_b = data.tables()
    space = data.space
    lx = lambda_matrix(space, x_m)
    ly = lambda_matrix(space, y_m)
    xy_m, xy_h = data.bracket_split(x_m, y_m)
    op = ra.mat_sub(ra.commutator(lx, ly), lambda_matrix(space, xy_m))
    for t, c in enumerate(xy_h):
        if c != 0:
            op = ra.mat_sub(op, ra.mat_scale(c, ad_h_b[t]))
    return op


def curvature_operator(space: ReductiveSpace, x_m: Vec, y_m: Vec) -> Mat:
    """[Lambda(x),Lambda(y)] - Lambda([x,y]_m) - ad([x,y]_h) as an operator on m.

    Bilinear in (x, y); assembled from the cached basis-pair operators.
    """
    data = _data(space)
    ops, _ = data.op_basis()
    r = data.r
    out = ra.zeros(r, r)
    for i in range(r):
        if x_m[i] == 0:
            continue
        for j in range(r):
            c = x_m[i] * y_m[j]
            if c != 0 and i != j:
                out = ra.mat_add(out, ra.mat_scale(c, ops[i][j]))
    return out


def curvature_tensor(space: ReductiveSpace, x_m: Vec, y_m: Vec, w_m: Vec, z_m: Vec) -> Fraction:
    """R(x,y,w,z) = <op(x,y) w, z>; orientation fixed against curvature_diag."""
    data = _data(space)
    _, gops = data.op_basis()
    r = data.r
    total = Fraction(0)
    for i in range(r):
        if x_m[i] == 0:
            continue
        for j in range(r):
            c = x_m[i] * y_m[j]
            if c != 0 and i != j:
                gop = gops[i][j]
                # z^T (G op) w
                acc = Fraction(0)
                for a in range(r):
                    if z_m[a] == 0:
                        continue
                    row = gop[a]
                    acc += z_m[a] * sum(row[b] * w_m[b] for b in range(r) if w_m[b] != 0)
                total += c * acc
    return total


def curvature_diag(space: ReductiveSpace, x_m: Vec, y_m: Vec) -> Fraction:
    """Diagonal curvature R(x,y,y,x) by the closed six-term formula.

    Kept independent of curvature_operator: serves as the oracle fixing the
    sign convention of the full tensor.
    """
    data = _data(space)
    xy_m, xy_h = data.bracket_split(x_m, y_m)
    x_xy, _ = data.bracket_split(x_m, xy_m)
    yx_m = ra.vec_scale(Fraction(-1), xy_m)
    y_yx, _ = data.bracket_split(y_m, yx_m)
    ad_h = data.ad_h_on_m(xy_h)
    uxy = u_map(space, x_m, y_m)
    uxx = u_map(space, x_m, x_m)
    uyy = u_map(space, y_m, y_m)
    return (
        Fraction(-3, 4) * data.pair(xy_m, xy_m)
        - Fraction(1, 2) * data.pair(x_xy, y_m)
        - Fraction(1, 2) * data.pair(y_yx, x_m)
        + data.pair(y_m, ra.mat_vec(ad_h, x_m))
        + data.pair(uxy, uxy)
        - data.pair(uxx, uyy)
    )


def ricci_tensor(space: ReductiveSpace) -> Mat:
    """Ricci matrix on the m-basis, exact.

    Computed as the metric contraction Ric(u,w) = sum_ab Ginv[a][b]
    R(u, e_a, e_b, w), which equals the epsilon-weighted orthonormal sum of
    the definition without needing square roots.
    """
    data = _data(space)
    r = data.r
    ginv = data.gram_inv
    _, gops = data.op_basis()
    ric = ra.zeros(r, r)
    for i in range(r):
        for j in range(i, r):
            val = Fraction(0)
            for a in range(r):
                if a == i:
                    continue
                gop = gops[i][a]
                for b in range(r):
                    if ginv[a][b] != 0:
                        # <op(e_i, e_a) e_b, e_j> = (G op)[j][b]
                        val += ginv[a][b] * gop[j][b]
            ric[i][j] = val
            ric[j][i] = val
    return ric


def scalar_curvature(space: ReductiveSpace) -> Fraction:
    data = _data(space)
    ric = ricci_tensor(space)
    return ra.trace(ra.mat_mul(data.gram_inv, ric))


def einstein_ratio(space: ReductiveSpace) -> Fraction | None:
    """c with Ric = c * metric, if the space is Einstein; None otherwise."""
    data = _data(space)
    ric = ricci_tensor(space)
    c = None
    for i in range(data.r):
        for j in range(data.r):
            if data.gram[i][j] != 0:
                c = ric[i][j] / data.gram[i][j]
                break
        if c is not None:
            break
    if c is None:
        return None
    return c if ric == ra.mat_scale(c, data.gram) else None


def ricci_orthonormal_check(space: ReductiveSpace, tol: float = 1e-9) -> bool:
    """Recompute Ricci through an explicit pseudo-orthonormal basis (floats)
    and compare with the exact contraction; the basis-independence cross-check."""
    data = _data(space)
    c, d = ra.congruence_diagonalize(space.metric)
    r = data.r
    cf = np.array(ra.to_float_mat(c))
    basis = []
    eps = []
    for j in range(r):
        dj = float(d[j][j])
        if dj == 0:
            raise ValueError("metric is degenerate")
        basis.append(cf[:, j] / np.sqrt(abs(dj)))
        eps.append(1.0 if dj > 0 else -1.0)
    # exact 4-tensor on basis vectors, then contract with the float basis
    r4 = np.zeros((r, r, r, r))
    for i in range(r):
        ei = ra.zero_vec(r)
        ei[i] = Fraction(1)
        for p in range(r):
            ep = ra.zero_vec(r)
            ep[p] = Fraction(1)
            gop = ra.mat_mul(data.gram, curvature_operator(space, ei, ep))
            gop_f = np.array(ra.to_float_mat(gop))
            for q in range(r):
                for j in range(r):
                    r4[i][p][q][j] = gop_f[j][q]
    num = np.zeros((r, r))
    for a in range(r):
        va = basis[a]
        num += eps[a] * np.einsum("p,ipqj,q->ij", va, r4, va)
    exact = np.array(ra.to_float_mat(ricci_tensor(space)))
    scale = max(1.0, float(np.max(np.abs(exact))))
    return bool(np.max(np.abs(num - exact)) <= tol * scale * 10)


def sectional_curvature(space: ReductiveSpace, x_m: Vec, y_m: Vec) -> Fraction:
    """K = R(x,y,y,x) / (<x,x><y,y> - <x,y>^2); errors on degenerate planes."""
    data = _data(space)
    q = data.pair(x_m, x_m) * data.pair(y_m, y_m) - data.pair(x_m, y_m) ** 2
    if q == 0:
        raise ValueError("plane is degenerate")
    return curvature_diag(space, x_m, y_m) / q


def _mat_to_vec(m: Mat) -> Vec:
    return [x for row in m for x in row]


def holonomy_algebra(space: ReductiveSpace) -> list[Mat]:
    """Basis of m0 + [Lambda(m), m0] + [Lambda(m), [Lambda(m), m0]] + ...

    m0 is the span of the curvature operators over basis pairs; iteration
    stops when the dimension stabilizes.  Every output is metric-skew.
    """
    data = _data(space)
    r = data.r
    _, _, _, lam_b, _ = data.tables()
    lambdas = lam_b
    ops, _ = data.op_basis()
    gens: list[Mat] = []
    for i in range(r):
        for j in range(i + 1, r):
            gens.append(ops[i][j])
    span_rows = ra.span_basis([_mat_to_vec(g_) for g_ in gens])
    basis_mats = [g_ for g_ in gens]
    current = span_rows
    frontier = basis_mats
    while True:
        new_mats = [ra.commutator(lam, m_) for lam in lambdas for m_ in frontier]
        extended = ra.span_basis(current + [_mat_to_vec(m_) for m_ in new_mats])
        if len(extended) == len(current):
            break
        frontier = new_mats
        current = extended
    out = [[v[i * r:(i + 1) * r] for i in range(r)] for v in current]
    for m_ in out:
        gm = ra.mat_mul(data.gram, m_)
        for i in range(r):
            for j in range(r):
                if gm[i][j] + gm[j][i] != 0:
                    raise RuntimeError("holonomy generator is not metric-skew")
    return out


def holonomy_biinvariant(g: LieAlgebra, metric: SymBilinearForm) -> list[Mat]:
    """ad([g,g]) for a bi-invariant metric; must span the generic holonomy."""
    from .forms import ad_invariance_residual
    from .lie_core import ad_matrix, derived_subalgebra

    if ad_invariance_residual(metric) != 0:
        raise ValueError("metric is not ad-invariant")
    der = derived_subalgebra(g)
    mats = [ad_matrix(g.element(v)) for v in der.basis]
    rows = ra.span_basis([_mat_to_vec(m_) for m_ in mats])
    n = g.dim
    return [[v[i * n:(i + 1) * n] for i in range(n)] for v in rows]


def holonomy_span_equal(h1: list[Mat], h2: list[Mat]) -> bool:
    r1 = ra.span_basis([_mat_to_vec(m_) for m_ in h1])
    r2 = ra.span_basis([_mat_to_vec(m_) for m_ in h2])
    return r1 == r2


def biinvariant_space(g: LieAlgebra, metric: SymBilinearForm) -> ReductiveSpace:
    """The reductive model (g, h = 0, m = g) of a Lie group with bi-invariant metric."""
    m_basis = [e.coords for e in g.basis_elements()]
    return reductive_space(g, [], m_basis, metric.matrix)


@dataclass(frozen=True)
class CurvatureReport:
    ricci: Mat
    scal: Fraction
    einstein_ratio: Fraction | None
    holonomy_dim: int
    holonomy_basis: list[Mat]


def curvature_report(space: ReductiveSpace) -> CurvatureReport:
    hol = holonomy_algebra(space)
    return CurvatureReport(
        ricci=ricci_tensor(space),
        scal=scalar_curvature(space),
        einstein_ratio=einstein_ratio(space),
        holonomy_dim=len(hol),
        holonomy_basis=hol,
    )
