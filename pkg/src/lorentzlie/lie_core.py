"""Finite-dimensional real Lie algebras over exact rational structure constants.

A LieAlgebra stores a sparse antisymmetric structure table c[i][j][k] with
i < j; brackets, adjoint matrices, the Killing form, characteristic series
and invariant-subspace generation are all computed exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import rational as ra
from .rational import Mat, Vec


class AlgebraMismatch(ValueError):
    """Elements of different algebras were combined."""


@dataclass(frozen=True)
class LieAlgebra:
    dim: int
    basis_labels: tuple[str, ...]
    # sparse table: (i, j) with i < j -> {k: coefficient of basis_k in [e_i, e_j]}
    table: dict[tuple[int, int], dict[int, Fraction]] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        if self.dim < 0:
            raise ValueError("dimension must be nonnegative")
        if len(self.basis_labels) != self.dim:
            raise ValueError("need one label per basis vector")
        for (i, j), entry in self.table.items():
            if not (0 <= i < j < self.dim):
                raise ValueError(f"bad structure index pair ({i},{j})")
            for k in entry:
                if not 0 <= k < self.dim:
                    raise ValueError(f"bad structure target index {k}")

    @staticmethod
    def from_triples(dim, labels, triples, name=""):
        """Build from sparse entries (i, j, k, value) meaning [e_i,e_j] = sum value*e_k.

        Pairs may be given in either order; antisymmetry is enforced by
        storing i < j with the appropriately signed value.
        """
        table: dict[tuple[int, int], dict[int, Fraction]] = {}
        for i, j, k, value in triples:
            v = ra.frac(value)
            if i == j:
                if v != 0:
                    raise ValueError(f"[e_{i},e_{i}] must vanish")
                continue
            key, sign = ((i, j), 1) if i < j else ((j, i), -1)
            entry = table.setdefault(key, {})
            entry[k] = entry.get(k, Fraction(0)) + sign * v
        table = {
            key: {k: v for k, v in entry.items() if v != 0}
            for key, entry in table.items()
        }
        table = {key: entry for key, entry in table.items() if entry}
        return LieAlgebra(dim=dim, basis_labels=tuple(labels), table=table, name=name)

    def basis_bracket(self, i: int, j: int) -> Vec:
        """[e_i, e_j] as a coordinate vector."""
        out = ra.zero_vec(self.dim)
        if i == j:
            return out
        key, sign = ((i, j), 1) if i < j else ((j, i), -1)
        for k, v in self.table.get(key, {}).items():
            out[k] = sign * v
        return out

    def element(self, coords) -> "AlgebraElement":
        v = ra.vec(coords)
        if len(v) != self.dim:
            raise ValueError("coordinate length must equal the algebra dimension")
        return AlgebraElement(self, v)

    def basis_element(self, i: int) -> "AlgebraElement":
        v = ra.zero_vec(self.dim)
        v[i] = Fraction(1)
        return AlgebraElement(self, v)

    def basis_elements(self) -> list["AlgebraElement"]:
        return [self.basis_element(i) for i in range(self.dim)]

    def structure_triples(self) -> list[tuple[int, int, int, Fraction]]:
        out = []
        for (i, j), entry in sorted(self.table.items()):
            for k, v in sorted(entry.items()):
                out.append((i, j, k, v))
        return out


@dataclass(frozen=True)
class AlgebraElement:
    algebra: LieAlgebra
    coords: Vec

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        _same_algebra(self, other)
        return AlgebraElement(self.algebra, ra.vec_add(self.coords, other.coords))

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        _same_algebra(self, other)
        return AlgebraElement(self.algebra, ra.vec_sub(self.coords, other.coords))

    def scaled(self, c) -> "AlgebraElement":
        return AlgebraElement(self.algebra, ra.vec_scale(ra.frac(c), self.coords))

    def is_zero(self) -> bool:
        return ra.is_zero_vec(self.coords)


@dataclass(frozen=True)
class Subspace:
    """A subspace given by linearly independent basis columns in algebra coordinates."""

    algebra: LieAlgebra
    basis: list[Vec]  # each entry is a coordinate column of length algebra.dim

    def __post_init__(self):
        if self.basis and ra.rank([v[:] for v in self.basis]) != len(self.basis):
            raise ValueError("subspace basis columns are linearly dependent")

    @property
    def dim_subspace(self) -> int:
        return len(self.basis)

    def contains(self, v: Vec) -> bool:
        return ra.span_contains(self.basis, v)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)


@dataclass(frozen=True)
class SymBilinearForm:
    """Symmetric bilinear form on a LieAlgebra, stored as its Gram matrix."""

    algebra: LieAlgebra
    matrix: Mat

    def __post_init__(self):
        n = self.algebra.dim
        m = self.matrix
        if len(m) != n or any(len(row) != n for row in m):
            raise ValueError("form matrix must be dim x dim")
        for i in range(n):
            for j in range(i):
                if m[i][j] != m[j][i]:
                    raise ValueError("form matrix must be symmetric")

    def apply(self, x: Vec, y: Vec) -> Fraction:
        return ra.dot(x, ra.mat_vec(self.matrix, y))


def _same_algebra(x: AlgebraElement, y: AlgebraElement):
    if x.algebra is not y.algebra and x.algebra != y.algebra:
        raise AlgebraMismatch("elements belong to different algebras")


def bracket(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """Lie bracket [x, y], bilinear contraction against the structure table."""
    _same_algebra(x, y)
    a = x.algebra
    out = ra.zero_vec(a.dim)
    for (i, j), entry in a.table.items():
        c = x.coords[i] * y.coords[j] - x.coords[j] * y.coords[i]
        if c != 0:
            for k, v in entry.items():
                out[k] += c * v
    return AlgebraElement(a, out)


def bracket_vec(a: LieAlgebra, x: Vec, y: Vec) -> Vec:
    return bracket(AlgebraElement(a, x), AlgebraElement(a, y)).coords


def ad_matrix(x: AlgebraElement) -> Mat:
    """Matrix of ad_x; column j is [x, e_j]."""
    a = x.algebra
    cols = [bracket(x, a.basis_element(j)).coords for j in range(a.dim)]
    return [[cols[j][i] for j in range(a.dim)] for i in range(a.dim)]


def jacobi_residual(a: LieAlgebra) -> Fraction:
    """Max-norm of the worst Jacobi cycle over basis triples; 0 iff a is a Lie algebra."""
    worst = Fraction(0)
    basis = a.basis_elements()
    for i in range(a.dim):
        for j in range(i + 1, a.dim):
            bij = bracket(basis[i], basis[j])
            for k in range(j + 1, a.dim):
                cyc = (
                    bracket(basis[i], bracket(basis[j], basis[k]))
                    + bracket(basis[j], bracket(basis[k], basis[i]))
                    + bracket(basis[k], bij)
                )
                m = max((abs(c) for c in cyc.coords), default=Fraction(0))
                worst = max(worst, m)
    return worst


def killing_form(a: LieAlgebra) -> SymBilinearForm:
    """k(x,y) = trace(ad_x ad_y), exact."""
    ads = [ad_matrix(e) for e in a.basis_elements()]
    n = a.dim
    m = ra.zeros(n, n)
    for i in range(n):
        for j in range(i, n):
            t = ra.trace(ra.mat_mul(ads[i], ads[j]))
            m[i][j] = t
            m[j][i] = t
    return SymBilinearForm(a, m)


def center(a: LieAlgebra) -> Subspace:
    """Common kernel of all adjoint matrices."""
    if a.dim == 0:
        return Subspace(a, [])
    stacked: Mat = []
    for e in a.basis_elements():
        stacked.extend(ad_matrix(e))
    return Subspace(a, ra.nullspace(stacked))


def derived_series_dims(a: LieAlgebra) -> list[int]:
    """Dimensions of g, [g,g], [[g,g],[g,g]], ... until stabilization."""
    current = ra.span_basis([e.coords for e in a.basis_elements()])
    dims = [len(current)]
    while True:
        nxt = _bracket_span(a, current, current)
        dims.append(len(nxt))
        if len(nxt) == dims[-2]:
            return dims[:-1]
        if len(nxt) == 0:
            return dims
        current = nxt


def lower_central_dims(a: LieAlgebra) -> list[int]:
    """Dimensions of g, [g,g], [g,[g,g]], ... until stabilization."""
    full = ra.span_basis([e.coords for e in a.basis_elements()])
    current = full
    dims = [len(current)]
    while True:
        nxt = _bracket_span(a, full, current)
        dims.append(len(nxt))
        if len(nxt) == dims[-2]:
            return dims[:-1]
        if len(nxt) == 0:
            return dims
        current = nxt


def _bracket_span(a: LieAlgebra, u: list[Vec], v: list[Vec]) -> list[Vec]:
    prods = [bracket_vec(a, x, y) for x in u for y in v]
    prods = [p for p in prods if not ra.is_zero_vec(p)]
    return ra.span_basis(prods)


def derived_subalgebra(a: LieAlgebra) -> Subspace:
    basis = _bracket_span(
        a,
        [e.coords for e in a.basis_elements()],
        [e.coords for e in a.basis_elements()],
    )
    return Subspace(a, basis)


@dataclass(frozen=True)
class StructureReport:
    derived_series_dims: list[int]
    lower_central_dims: list[int]
    solvable: bool
    nilpotent: bool
    semisimple: bool
    reductive: bool
    compact_type: bool
    center_dim: int


def structure_report(a: LieAlgebra) -> StructureReport:
    """Series, solvability/nilpotency, semisimplicity, reductivity, compact type.

    Semisimple iff the Killing form is nondegenerate; compact type iff
    reductive with negative semidefinite Killing form; reductive iff the
    radical equals the center.
    """
    from .algebra_zoo import radical  # local import, zoo builds on this module

    ds = derived_series_dims(a)
    lc = lower_central_dims(a)
    solvable = ds[-1] == 0
    nilpotent = lc[-1] == 0
    k = killing_form(a)
    pos, neg, zero = ra.inertia(k.matrix)
    semisimple = zero == 0 and a.dim > 0
    z = center(a)
    rad = radical(a)
    reductive = rad.dim_subspace == z.dim_subspace and all(
        z.contains(v) for v in rad.basis
    )
    compact_type = reductive and pos == 0
    return StructureReport(
        derived_series_dims=ds,
        lower_central_dims=lc,
        solvable=solvable,
        nilpotent=nilpotent,
        semisimple=semisimple,
        reductive=reductive,
        compact_type=compact_type,
        center_dim=z.dim_subspace,
    )


def direct_sum(a: LieAlgebra, b: LieAlgebra) -> LieAlgebra:
    """Direct sum of ideals; basis ordered with the left summand first."""
    triples = []
    for i, j, k, v in a.structure_triples():
        triples.append((i, j, k, v))
    off = a.dim
    for i, j, k, v in b.structure_triples():
        triples.append((i + off, j + off, k + off, v))
    labels = [f"{lbl}.l" for lbl in a.basis_labels] + [f"{lbl}.r" for lbl in b.basis_labels]
    name = f"{a.name}+{b.name}" if a.name and b.name else ""
    return LieAlgebra.from_triples(a.dim + b.dim, labels, triples, name=name)


def generated_invariant_subspace(operators: list[Mat], seed: AlgebraElement) -> Subspace:
    """Smallest subspace containing seed and closed under all operators."""
    if seed.is_zero():
        raise ValueError("seed vector must be nonzero")
    n = len(seed.coords)
    for op in operators:
        if len(op) != n or any(len(row) != n for row in op):
            raise ValueError("operator dimensions must match the seed")
    basis = ra.span_basis([seed.coords])
    while True:
        new = [ra.mat_vec(op, v) for op in operators for v in basis]
        extended = ra.span_basis(basis + new)
        if len(extended) == len(basis):
            return Subspace(seed.algebra, extended)
        basis = extended


def transport_structure(a: LieAlgebra, new_basis_cols: Mat, name="") -> LieAlgebra:
    """Structure table of a in the basis given by the columns of new_basis_cols.

    Column j holds the coordinates of the new basis vector f_j in the old
    basis, so [f_i, f_j] = B^{-1} [B e_i, B e_j].
    """
    n = a.dim
    binv = ra.inv(new_basis_cols)
    cols = [[new_basis_cols[r][j] for r in range(n)] for j in range(n)]
    triples = []
    for i in range(n):
        for j in range(i + 1, n):
            br = bracket_vec(a, cols[i], cols[j])
            new_coords = ra.mat_vec(binv, br)
            for k, v in enumerate(new_coords):
                if v != 0:
                    triples.append((i, j, k, v))
    return LieAlgebra.from_triples(n, a.basis_labels, triples, name=name or a.name)
