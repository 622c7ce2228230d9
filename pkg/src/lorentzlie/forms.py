"""Symmetric bilinear forms on Lie algebras.

Exact operations: ad-invariance residual, Sylvester inertia, the two-parameter
family of ad-invariant Lorentz forms on twisted Heisenberg algebras, condition
(*) checks and the light-cone proportionality test.  Operations whose
constructions genuinely need square roots (normalization, the symplectic
orthogonal basis, twisted-structure recognition) run in numeric mode with a
documented tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import rational as ra
from .lie_core import LieAlgebra, Subspace, SymBilinearForm, bracket_vec

NUMERIC_TOL = 1e-9


@dataclass(frozen=True)
class Signature:
    positive: int
    negative: int
    zero: int

    @property
    def lorentzian(self) -> bool:
        return self.negative == 1 and self.zero == 0


@dataclass(frozen=True)
class TwistedLorentzParams:
    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        if self.alpha <= 0:
            raise ValueError("alpha must be positive")


def ad_invariance_residual(form: SymBilinearForm) -> Fraction:
    """max |b([W,X],Y) + b(X,[W,Y])| over basis triples; zero iff ad-invariant."""
    a = form.algebra
    m = form.matrix
    worst = Fraction(0)
    basis = [e.coords for e in a.basis_elements()]
    brackets = [[bracket_vec(a, w, x) for x in basis] for w in basis]
    m_brackets = [[ra.mat_vec(m, br) for br in row] for row in brackets]
    for wi in range(a.dim):
        for xi in range(a.dim):
            for yi in range(a.dim):
                # b([W,X],Y) + b(X,[W,Y]) with X = e_xi, Y = e_yi
                r = m_brackets[wi][xi][yi] + m_brackets[wi][yi][xi]
                worst = max(worst, abs(r))
    return worst


def signature(form: SymBilinearForm) -> Signature:
    pos, neg, zero = ra.inertia(form.matrix)
    return Signature(pos, neg, zero)


def _twisted_shape(s: LieAlgebra) -> tuple[int, list[Fraction]]:
    """Check s is a catalog twisted Heisenberg algebra; return (d, lambda)."""
    if s.dim < 4 or s.dim % 2 != 0:
        raise ValueError("not a twisted Heisenberg catalog algebra")
    d = (s.dim - 2) // 2
    lam = []
    for k in range(1, d + 1):
        br = s.basis_bracket(2 * k, 2 * k + 1)
        lam.append(br[1])
    from .algebra_zoo import twisted_heisenberg

    if any(x <= 0 for x in lam):
        raise ValueError("not a twisted Heisenberg catalog algebra")
    if s.table != twisted_heisenberg(lam).table:
        raise ValueError("not a twisted Heisenberg catalog algebra")
    return d, lam


def make_twisted_lorentz(s: LieAlgebra, p: TwistedLorentzParams) -> SymBilinearForm:
    """The ad-invariant Lorentz form with <T,Z> = alpha, <T,T> = beta.

    In the canonical basis (T, Z, X1, Y1, ...): the X/Y vectors are mutually
    orthogonal of square-norm alpha, Z is isotropic and orthogonal to them.
    """
    d, _lam = _twisted_shape(s)
    n = s.dim
    m = ra.zeros(n, n)
    m[0][0] = p.beta
    m[0][1] = m[1][0] = p.alpha
    for i in range(2, n):
        m[i][i] = p.alpha
    return SymBilinearForm(s, m)


def recover_twisted_parameters(form: SymBilinearForm) -> TwistedLorentzParams:
    """Read (alpha, beta) = (<T,Z>, <T,T>) off an ad-invariant Lorentz form.

    A matrix written in the flipped designation T -> -T, Y_k -> -Y_k (showing
    <T,Z> < 0) is accepted and reported with alpha > 0; on the canonical
    catalog basis alpha is positive automatically.
    """
    s = form.algebra
    d, _ = _twisted_shape(s)
    n = s.dim
    candidates = [form.matrix]
    if form.matrix[0][1] < 0:
        signs = [Fraction(-1), Fraction(1)] + [
            Fraction(1) if i % 2 == 0 else Fraction(-1) for i in range(2, n)
        ]
        flipped = [[signs[i] * signs[j] * form.matrix[i][j] for j in range(n)] for i in range(n)]
        candidates = [flipped]
    matrix = candidates[0]
    cand = SymBilinearForm(s, matrix)
    if ad_invariance_residual(cand) != 0:
        raise ValueError("form is not ad-invariant")
    if not signature(cand).lorentzian:
        raise ValueError("form is not Lorentzian")
    params = TwistedLorentzParams(alpha=matrix[0][1], beta=matrix[0][0])
    if make_twisted_lorentz(s, params).matrix != matrix:
        raise ValueError("ad-invariant Lorentz form is outside the (alpha, beta) family")
    return params


def normalize_twisted_lorentz(s: LieAlgebra, p: TwistedLorentzParams, mode: str = "exact"):
    """Automorphism L with (L^{-1})-pullback of the (1,0)-form equal to the (alpha,beta)-form.

    L sends T -> T - beta/(2 alpha) Z, X_k -> X_k / sqrt(alpha),
    Y_k -> Y_k / sqrt(alpha), Z -> Z / alpha.  Exact mode requires alpha to be
    a perfect rational square; otherwise use mode="numeric".
    """
    d, _ = _twisted_shape(s)
    n = s.dim
    sqrt_alpha = ra.rational_sqrt(p.alpha)
    if mode == "exact":
        if sqrt_alpha is None:
            raise ValueError("needs numeric mode: alpha is not a perfect rational square")
        m = ra.zeros(n, n)
        m[0][0] = Fraction(1)
        m[1][0] = -p.beta / (2 * p.alpha)
        m[1][1] = 1 / p.alpha
        for i in range(2, n):
            m[i][i] = 1 / sqrt_alpha
        return m
    a = float(p.alpha)
    m_f = np.zeros((n, n))
    m_f[0][0] = 1.0
    m_f[1][0] = -float(p.beta) / (2 * a)
    m_f[1][1] = 1 / a
    for i in range(2, n):
        m_f[i][i] = 1 / np.sqrt(a)
    return m_f


def symplectic_orthogonal_basis(metric, omega, tol: float = NUMERIC_TOL) -> np.ndarray:
    """Metric-orthonormal basis splitting a nondegenerate skew form into 2x2 blocks.

    Columns b_1, ..., b_2d are metric-orthonormal with omega(b_j, b_k) = 0
    except on the pairs {2l-1, 2l}; follows the eigenvector recursion on
    Omega^2 with invariant complements.  Numeric (tolerance tol).
    """
    g = np.array(ra.to_float_mat(metric) if metric and isinstance(metric[0][0], Fraction) else metric, dtype=float)
    om = np.array(ra.to_float_mat(omega) if omega and isinstance(omega[0][0], Fraction) else omega, dtype=float)
    n = g.shape[0]
    if n % 2 != 0:
        raise ValueError("dimension must be even")
    evals = np.linalg.eigvalsh(g)
    if evals.min() <= tol:
        raise ValueError("metric must be positive definite")
    if abs(np.linalg.det(om)) <= tol ** (n / 2):
        raise ValueError("skew form is degenerate")

    # orthonormalize: columns of c are g-orthonormal
    w, v = np.linalg.eigh(g)
    c = v @ np.diag(1 / np.sqrt(w))
    big_omega = c.T @ om @ c  # omega in orthonormal coordinates

    def recurse(frame: np.ndarray) -> list[np.ndarray]:
        # frame columns: orthonormal spanning the current invariant subspace
        if frame.shape[1] == 0:
            return []
        om_sub = frame.T @ big_omega @ frame
        sq = om_sub @ om_sub
        _, vecs = np.linalg.eigh((sq + sq.T) / 2)
        x = vecs[:, 0]
        ox = om_sub @ x
        ox = ox - (ox @ x) * x
        nx = np.linalg.norm(ox)
        if nx <= tol:
            raise ValueError("skew form is degenerate")
        y = ox / nx
        pair = [frame @ x, frame @ y]
        proj = np.eye(frame.shape[1]) - np.outer(x, x) - np.outer(y, y)
        q, r = np.linalg.qr(proj)
        keep = [i for i in range(frame.shape[1]) if abs(r[i, i]) > 1e-12]
        rest = frame @ q[:, keep]
        return pair + recurse(rest)

    cols = recurse(np.eye(n))
    basis = np.column_stack([c @ col for col in cols])
    return basis


def recognize_twisted_structure(
    g: LieAlgebra, form: SymBilinearForm, t_index: int = 0, tol: float = NUMERIC_TOL
):
    """Recover a canonical twisted-Heisenberg basis and frequencies from a form.

    The algebra must have a distinguished generator (basis index t_index)
    complementing its derived algebra, and the form must be an ad-invariant
    Lorentzian scalar product.  Returns (basis columns as floats, lambda tuple,
    params); the induced structure table equals the catalog table within tol,
    and the form expressed in the recognized basis equals the normalized
    family member with the returned params (alpha = 1 by construction).
    """
    if ad_invariance_residual(form) != 0:
        raise ValueError("form is not ad-invariant")
    if not signature(form).lorentzian:
        raise ValueError("form is not Lorentzian")
    n = g.dim
    from .lie_core import center, derived_subalgebra

    he = derived_subalgebra(g)
    if he.dim_subspace != n - 1 or (n - 1) % 2 == 0:
        raise ValueError("derived algebra is not a corank-one Heisenberg part")
    z = center(g)
    if z.dim_subspace != 1:
        raise ValueError("center is not one-dimensional")
    z0 = z.basis[0]
    t0 = g.basis_element(t_index).coords
    if he.contains(t0):
        raise ValueError("distinguished generator lies in the derived algebra")

    # exact part: complement V of the center line inside he, bracket pairing omega
    z_idx = next(i for i, c in enumerate(z0) if c != 0)
    v_basis = []
    current = ra.span_basis([z0])
    for v in he.basis:
        if not ra.span_contains(current, v):
            # normalize the Z-slot away so Z-components can be read off directly
            v = ra.vec_sub(v, ra.vec_scale(v[z_idx] / z0[z_idx], z0))
            v_basis.append(v)
            current = ra.span_basis(current + [v])

    def omega(u, v):
        return bracket_vec(g, u, v)[z_idx] / z0[z_idx]

    nv = len(v_basis)
    om = [[omega(v_basis[i], v_basis[j]) for j in range(nv)] for i in range(nv)]
    # correct T so that ad_T preserves V: kill Z-components of [T, v]
    rhs = [Fraction(bracket_vec(g, t0, v)[z_idx], 1) / z0[z_idx] for v in v_basis]
    # find u in V with omega(u, v_j) = -zcomp([t0, v_j])
    sol = ra.solve([[om[i][j] for i in range(nv)] for j in range(nv)], [-r for r in rhs])
    if sol is None:
        raise ValueError("bracket pairing is degenerate")
    t_prime = t0[:]
    for i in range(nv):
        t_prime = ra.vec_add(t_prime, ra.vec_scale(sol[i], v_basis[i]))

    alpha = form.apply(t_prime, z0)
    if alpha == 0:
        raise ValueError("distinguished generator pairs trivially with the center")
    if alpha < 0:
        # resolve the T vs -T ambiguity by flipping Z; omega flips with it
        z0 = ra.vec_scale(Fraction(-1), z0)
        alpha = -alpha
        om = [[-x for x in row] for row in om]

    gram_v = [[form.apply(u, v) for v in v_basis] for u in v_basis]
    basis_v = symplectic_orthogonal_basis(gram_v, om, tol=tol)

    v_cols = np.array(ra.to_float_mat([[v_basis[j][i] for j in range(nv)] for i in range(n)]))
    om_f = np.array(ra.to_float_mat(om))

    pairs = []
    for l in range(nv // 2):
        x = basis_v[:, 2 * l]
        y = basis_v[:, 2 * l + 1]
        w = x @ om_f @ y
        if w < 0:
            x, y, w = y, x, -w
        lam = float(alpha) * w
        pairs.append((lam, v_cols @ x, v_cols @ y))
    pairs.sort(key=lambda p: p[0])

    z_new = np.array([float(c) for c in z0]) / float(alpha)
    cols = [np.array([float(c) for c in t_prime]), z_new]
    lam_out = []
    for lam, x, y in pairs:
        cols += [x, y]
        lam_out.append(Fraction(lam).limit_denominator(10 ** 9))
    basis = np.column_stack(cols)

    from .algebra_zoo import twisted_heisenberg

    target = twisted_heisenberg(lam_out)
    binv = np.linalg.inv(basis)
    worst = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            br = bracket_vec(g, [Fraction(x).limit_denominator(10 ** 12) for x in basis[:, i]],
                             [Fraction(x).limit_denominator(10 ** 12) for x in basis[:, j]])
            got = binv @ np.array([float(c) for c in br])
            want = np.array([float(c) for c in target.basis_bracket(i, j)])
            worst = max(worst, float(np.max(np.abs(got - want))))
    if worst > 1e-6:
        raise ValueError(f"recognized basis fails the canonical table check ({worst:.2e})")
    beta = form.apply(t_prime, t_prime)
    # in the recognized basis the form must be the normalized family member
    m_f = np.array(ra.to_float_mat(form.matrix))
    target_form = np.zeros((n, n))
    target_form[0][0] = float(beta)
    target_form[0][1] = target_form[1][0] = 1.0
    for i in range(2, n):
        target_form[i][i] = 1.0
    form_err = float(np.max(np.abs(basis.T @ m_f @ basis - target_form)))
    if form_err > 1e-6:
        raise ValueError(f"recognized basis fails the form normalization check ({form_err:.2e})")
    return basis, tuple(lam_out), TwistedLorentzParams(alpha=Fraction(1), beta=beta)


def condition_star_check(form: SymBilinearForm, v: Subspace) -> tuple[bool, int]:
    """Restrict the form to v and report (positive semidefinite?, kernel dimension)."""
    r = v.dim_subspace
    restricted = [
        [form.apply(v.basis[i], v.basis[j]) for j in range(r)] for i in range(r)
    ]
    pos, neg, zero = ra.inertia(restricted)
    return neg == 0, zero


def lightcone_determined(
    b1: SymBilinearForm, b2: SymBilinearForm, mode: str = "exact", tol: float = NUMERIC_TOL
):
    """lambda with b1 = lambda * b2 iff the b2-light-cone is b1-isotropic, else None.

    b2 must be Lorentzian.  Exact mode checks the polarized identities in a
    b2-diagonalizing basis; numeric mode evaluates b1 on the finite test set
    {v0 +- vj, sqrt(2) v0 + vj + vk} of a b2-orthonormal basis.
    """
    if not signature(b2).lorentzian:
        raise ValueError("b2 must be Lorentzian")
    n = len(b2.matrix)
    c, d = ra.congruence_diagonalize(b2.matrix)
    order = sorted(range(n), key=lambda i: d[i][i] > 0)  # negative direction first
    cols = [[c[i][order[j]] for j in range(n)] for i in range(n)]
    d2 = [d[order[j]][order[j]] for j in range(n)]
    b1d = [
        [
            sum(cols[i][a] * b1.matrix[i][j] * cols[j][b] for i in range(n) for j in range(n))
            for b in range(n)
        ]
        for a in range(n)
    ]
    if mode == "exact":
        lam = b1d[0][0] / d2[0]
        for i in range(n):
            for j in range(n):
                if i != j and b1d[i][j] != 0:
                    return None
            if b1d[i][i] != lam * d2[i]:
                return None
        return lam
    # numeric: orthonormalize and run the literal test set
    v0 = np.array([float(cols[i][0] ) for i in range(n)]) / np.sqrt(-float(d2[0]))
    vs = [np.array([float(cols[i][j]) for i in range(n)]) / np.sqrt(float(d2[j])) for j in range(1, n)]
    m1 = np.array(ra.to_float_mat(b1.matrix))

    def ev(u):
        return u @ m1 @ u

    scale = max(1.0, float(np.max(np.abs(m1))))
    for j, vj in enumerate(vs):
        if abs(ev(v0 + vj)) > tol * scale or abs(ev(v0 - vj)) > tol * scale:
            return None
        for vk in vs[j + 1:]:
            if abs(ev(np.sqrt(2) * v0 + vj + vk)) > tol * scale:
                return None
    return ev(vs[0]) if vs else -ev(v0)
