"""Eigenstructure operations: complete additive Jordan decomposition and the
spectral precompactness criterion.

Floating point throughout (default tolerance 1e-9; eigenvalue realness is
decided at 1e-7 relative to the spectral radius).  The semisimple part is
found by Newton iteration on the square-free polynomial of the clustered
spectrum; every iterate is a polynomial in the input matrix, so the three
parts commute to roundoff by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import rational as ra
from .lie_core import AlgebraElement, ad_matrix

TOL = 1e-9
EIG_CLASS_TOL = 1e-7


class SpectralKind(str, Enum):
    ZERO = "zero"
    NILPOTENT = "nilpotent"
    SEMISIMPLE_IMAGINARY = "semisimple_imaginary"
    SEMISIMPLE_REAL = "semisimple_real"
    SEMISIMPLE_MIXED = "semisimple_mixed"
    MIXED = "mixed"


@dataclass(frozen=True)
class JordanTriple:
    """x = E + H + N with commuting parts: E semisimple purely imaginary,
    H semisimple real, N nilpotent."""

    E: np.ndarray
    H: np.ndarray
    N: np.ndarray

    def residuals(self, x: np.ndarray) -> dict[str, float]:
        scale = max(np.linalg.norm(x), 1e-300)
        n = x.shape[0]
        npow = np.linalg.matrix_power(self.N, n)
        return {
            "reconstruction": float(np.linalg.norm(self.E + self.H + self.N - x) / scale),
            "commutators": float(
                max(
                    np.max(np.abs(self.E @ self.H - self.H @ self.E)),
                    np.max(np.abs(self.E @ self.N - self.N @ self.E)),
                    np.max(np.abs(self.H @ self.N - self.N @ self.H)),
                )
                / max(scale, 1.0)
            ),
            "nilpotency": float(np.max(np.abs(npow)) / max(scale ** n, 1e-300)),
        }


def _as_float(x) -> np.ndarray:
    if isinstance(x, np.ndarray):
        return x.astype(float)
    return np.array(ra.to_float_mat(x), dtype=float)


def _cluster_eigenvalues(w: np.ndarray, scale: float, n: int) -> list[complex]:
    """Cluster a noisy spectrum; radius grows like eps^(1/n) to absorb the
    perturbation of defective eigenvalues."""
    radius = scale * max(1e-8, 4.0 * float(np.finfo(float).eps) ** (1.0 / max(n, 1)))
    pts = sorted(w, key=lambda z: (z.real, z.imag))
    groups: list[list[complex]] = []
    for z in pts:
        placed = False
        for grp in groups:
            if abs(z - grp[0]) <= radius:
                grp.append(z)
                placed = True
                break
        if not placed:
            groups.append([z])
    # merge overlapping groups until stable
    changed = True
    while changed:
        changed = False
        for i in range(len(groups)):
            for j in range(i + 1, len(groups)):
                zi = sum(groups[i]) / len(groups[i])
                zj = sum(groups[j]) / len(groups[j])
                if abs(zi - zj) <= radius:
                    groups[i] += groups[j]
                    del groups[j]
                    changed = True
                    break
            if changed:
                break
    reps = [sum(g) / len(g) for g in groups]
    # enforce conjugate symmetry and realness of nearly-real representatives
    out = []
    for z in reps:
        if abs(z.imag) <= radius:
            z = complex(z.real, 0.0)
        out.append(z)
    return out


def _polyval_matrix(coeffs: list[complex], m: np.ndarray) -> np.ndarray:
    n = m.shape[0]
    acc = np.zeros_like(m, dtype=complex)
    for c in coeffs:
        acc = acc @ m + c * np.eye(n)
    return acc


def _poly_from_roots(roots: list[complex]) -> list[complex]:
    coeffs = np.array([1.0 + 0j])
    for r in roots:
        coeffs = np.polymul(coeffs, [1.0, -r])
    return coeffs.tolist()


def jordan_complete(x) -> JordanTriple:
    """Complete additive Jordan decomposition x = E + H + N."""
    xf = _as_float(x) if not np.iscomplexobj(x) else np.array(x)
    n = xf.shape[0]
    scale = float(np.linalg.norm(xf))
    if scale == 0.0:
        z = np.zeros((n, n))
        return JordanTriple(E=z, H=z.copy(), N=z.copy())

    xc = xf.astype(complex)
    w = np.linalg.eigvals(xc)
    reps = _cluster_eigenvalues(w, max(float(np.max(np.abs(w))), scale * 1e-12), n)

    # Newton iteration toward the semisimple part on q(t) = prod (t - rep)
    s = xc.copy()
    for _ in range(2):
        q = _poly_from_roots(reps)
        dq = np.polyder(np.array(q)).tolist()
        steps = max(1, int(np.ceil(np.log2(n))) + 2)
        for _ in range(steps):
            qs = _polyval_matrix(q, s)
            dqs = _polyval_matrix(dq, s)
            try:
                delta = np.linalg.solve(dqs, qs)
            except np.linalg.LinAlgError:
                delta = np.linalg.lstsq(dqs, qs, rcond=None)[0]
            s = s - delta
        # polish the representatives through the spectral projectors of s
        if len(reps) > 1:
            new_reps = []
            for rep in reps:
                proj = np.eye(n, dtype=complex)
                for other in reps:
                    if other != rep:
                        proj = proj @ (s - other * np.eye(n)) / (rep - other)
                tr = np.trace(proj)
                new_reps.append(np.trace(proj @ xc) / tr if abs(tr) > 1e-8 else rep)
            reps = [complex(z.real, 0.0) if abs(z.imag) < 1e-12 * scale else z for z in new_reps]

    d = s
    nil = xc - d
    # split D into real and imaginary semisimple parts via Lagrange interpolation
    h = np.zeros((n, n), dtype=complex)
    if len(reps) == 1:
        h = reps[0].real * np.eye(n)
    else:
        for rep in reps:
            ell = np.eye(n, dtype=complex)
            for other in reps:
                if other != rep:
                    ell = ell @ (d - other * np.eye(n)) / (rep - other)
            h = h + rep.real * ell
    e = d - h
    return JordanTriple(E=np.real(e), H=np.real(h), N=np.real(nil))


def spectral_class(x, tol: float = EIG_CLASS_TOL) -> SpectralKind:
    """Classify by semisimplicity and the real/imaginary character of the spectrum."""
    xf = _as_float(x) if not np.iscomplexobj(x) else np.array(x)
    n = xf.shape[0]
    scale = float(np.linalg.norm(xf))
    if scale <= 1e-300:
        return SpectralKind.ZERO
    triple = jordan_complete(xf)
    rho = max(float(np.max(np.abs(np.linalg.eigvals(xf)))), 1e-300)
    nil_nonzero = np.max(np.abs(triple.N)) > tol * scale
    e_nonzero = np.max(np.abs(triple.E)) > tol * max(rho, scale * tol)
    h_nonzero = np.max(np.abs(triple.H)) > tol * max(rho, scale * tol)
    if nil_nonzero:
        if not e_nonzero and not h_nonzero:
            return SpectralKind.NILPOTENT
        return SpectralKind.MIXED
    if e_nonzero and h_nonzero:
        return SpectralKind.SEMISIMPLE_MIXED
    if e_nonzero:
        return SpectralKind.SEMISIMPLE_IMAGINARY
    if h_nonzero:
        return SpectralKind.SEMISIMPLE_REAL
    return SpectralKind.ZERO


def precompact_criterion(x: AlgebraElement) -> bool:
    """Spectral necessary condition for x to generate a precompact one-parameter
    group: ad_x semisimple with purely imaginary spectrum.

    False as soon as ad_x is nilpotent nonzero, or has a nonzero real
    eigenvalue.  For elements outside a semisimple summand this is a necessary
    condition only.
    """
    kind = spectral_class(ad_matrix(x))
    return kind in (SpectralKind.ZERO, SpectralKind.SEMISIMPLE_IMAGINARY)


def jordan_oracle_spectra(x) -> dict[str, np.ndarray]:
    """Brute-force spectra for cross-checking jordan_complete.

    Characteristic polynomial computed exactly over the rationals
    (Faddeev-LeVerrier), roots by numpy; the triple's E/H spectra must match
    i*Im / Re of these roots as multisets.
    """
    if isinstance(x, np.ndarray):
        from fractions import Fraction

        xr = [[Fraction(v).limit_denominator(10 ** 12) for v in row] for row in x.tolist()]
    else:
        xr = x
    coeffs = [float(c) for c in ra.charpoly(xr)]
    roots = np.roots(coeffs)
    return {
        "roots": np.sort_complex(roots),
        "real_parts": np.sort(roots.real),
        "imag_parts": np.sort(roots.imag),
    }
