"""Vector and point configurations and the Gale dictionary between them."""
from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

from .errors import (
    DegenerateConfiguration,
    DimensionError,
    NotALattice,
    NotAMember,
    NotBalancedOdd,
    TorusCase,
    UnsupportedField,
)
from .field import AlgebraicField, FieldElement, Scalar, as_rational, coefficients, common_field
from .linalg import Lattice, kernel_basis, rank, same_row_space, solve, transpose

__all__ = [
    "VectorConfiguration",
    "PointConfiguration",
    "Quasilattice",
    "LeafType",
    "balance_and_oddify",
    "gale_dual",
    "gale_dual_inverse",
    "is_balanced",
    "is_graded",
    "is_odd",
    "is_primitive",
    "is_rational",
    "leaf_type",
    "quasilattice_info",
    "rationality_invariants",
    "relations",
    "relations_with_ones",
    "same_relations",
]


def _scalar(x) -> Scalar:
    if isinstance(x, FieldElement):
        return x.to_rational() if x.field.degree == 1 else x
    return as_rational(x)


@dataclass(frozen=True)
class VectorConfiguration:
    """Ordered vectors ``v_1 .. v_n`` spanning ``R^d``; the first ``h`` are ray generators.

    Repetitions and zero vectors are allowed.  ``h`` defaults to ``n``.
    """

    vectors: tuple
    h: int | None = None

    def __post_init__(self):
        vecs = tuple(tuple(_scalar(x) for x in v) for v in self.vectors)
        if not vecs:
            raise DegenerateConfiguration("a configuration needs at least one vector")
        d = len(vecs[0])
        if d == 0:
            raise TorusCase("vectors of dimension 0")
        if any(len(v) != d for v in vecs):
            raise DimensionError("vectors have different lengths")
        common_field(x for v in vecs for x in v)
        object.__setattr__(self, "vectors", vecs)
        h = len(vecs) if self.h is None else self.h
        if not 0 <= h <= len(vecs):
            raise ValueError(f"h={h} outside 0..{len(vecs)}")
        object.__setattr__(self, "h", h)
        if rank(self.matrix()) != d:
            raise DegenerateConfiguration("vectors do not span the ambient space")

    @property
    def n(self) -> int:
        return len(self.vectors)

    @property
    def d(self) -> int:
        return len(self.vectors[0])

    @property
    def field(self) -> AlgebraicField | None:
        return common_field(x for v in self.vectors for x in v)

    def matrix(self) -> list:
        """The ``d x n`` matrix whose columns are the vectors."""
        return transpose(self.vectors)

    def with_h(self, h: int) -> "VectorConfiguration":
        return VectorConfiguration(self.vectors, h)

    def __len__(self):
        return self.n

    def __getitem__(self, i):
        return self.vectors[i]


@dataclass(frozen=True)
class PointConfiguration:
    """``n`` points of ``C^m`` stored as real rows ``[Re | Im]`` of length ``2m``."""

    points: tuple
    m: int | None = None

    def __post_init__(self):
        pts = tuple(tuple(_scalar(x) for x in p) for p in self.points)
        if not pts:
            raise DegenerateConfiguration("empty point configuration")
        width = len(pts[0])
        if any(len(p) != width for p in pts):
            raise DimensionError("points have different lengths")
        if width % 2:
            raise DimensionError("real rows must have even length 2m")
        m = width // 2
        if self.m is not None and self.m != m:
            raise DimensionError(f"m={self.m} but rows have length {width}")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "m", m)
        if len(pts) < 2 * m + 1:
            raise DegenerateConfiguration("need n >= 2m + 1 points")
        if rank(self.lifted()) != 2 * m + 1:
            raise DegenerateConfiguration("points lie in a proper affine subspace")

    @property
    def n(self) -> int:
        return len(self.points)

    def lifted(self) -> list:
        """Graded lift into the chart ``{x_0 = 1}`` as a ``(2m+1) x n`` matrix."""
        one = Fraction(1)
        return [[one] * self.n] + transpose(self.points) if self.m else [[one] * self.n]

    def complex_points(self) -> list:
        """Pairs ``(Re, Im)`` per complex coordinate, for display."""
        m = self.m
        return [[(p[k], p[m + k]) for k in range(m)] for p in self.points]


def is_balanced(V) -> bool:
    vecs = V.vectors if isinstance(V, VectorConfiguration) else V
    d = len(vecs[0])
    return all(sum((v[i] for v in vecs), Fraction(0)) == 0 for i in range(d))


def is_odd(V: VectorConfiguration) -> bool:
    return (V.n - V.d) % 2 == 1


def is_graded(W) -> bool:
    """True when some linear functional takes the value 1 on every vector."""
    vecs = W.vectors if isinstance(W, VectorConfiguration) else [tuple(w) for w in W]
    return solve([list(w) for w in vecs], [Fraction(1)] * len(vecs)) is not None


def relations(V: VectorConfiguration) -> list:
    """Canonical basis of ``Rel(V)`` (rows of length ``n``)."""
    return kernel_basis(V.matrix())


def relations_with_ones(V: VectorConfiguration) -> list:
    """Basis of ``Rel(V)`` whose first row is the all-ones vector (V balanced)."""
    if not is_balanced(V):
        raise NotBalancedOdd("all-ones relation requires a balanced configuration")
    target = V.n - V.d
    basis = [[Fraction(1)] * V.n]
    for row in relations(V):
        if len(basis) == target:
            break
        if rank(basis + [row]) > len(basis):
            basis.append(row)
    return basis


def same_relations(V: VectorConfiguration, W: VectorConfiguration) -> bool:
    """Rel(V) == Rel(W) as subspaces of R^n (mutual containment by ranks)."""
    if V.n != W.n:
        return False
    RV, RW = relations(V), relations(W)
    if not RV or not RW:
        return not RV and not RW
    return same_row_space(RV, RW)


def balance_and_oddify(V: VectorConfiguration) -> VectorConfiguration:
    """Append ``-sum(v)`` when unbalanced, then a zero vector when ``n - d`` is even."""
    vecs = list(V.vectors)
    d = V.d
    total = [sum((v[i] for v in vecs), Fraction(0)) for i in range(d)]
    if any(x != 0 for x in total):
        vecs.append(tuple(-x for x in total))
    if (len(vecs) - d) % 2 == 0:
        vecs.append(tuple(Fraction(0) for _ in range(d)))
    return VectorConfiguration(tuple(vecs), V.h)


def gale_dual(V: VectorConfiguration) -> PointConfiguration:
    """Point configuration ``Lambda^R`` (n points in ``R^{2m}``) Gale dual to a balanced odd ``V``."""
    if not is_balanced(V):
        raise NotBalancedOdd("configuration is not balanced")
    if not is_odd(V):
        raise NotBalancedOdd(f"n - d = {V.n - V.d} is even")
    K = relations_with_ones(V)
    rest = K[1:]
    if not rest:
        return PointConfiguration(tuple(() for _ in range(V.n)))
    return PointConfiguration(tuple(tuple(col) for col in transpose(rest)))


def gale_dual_inverse(points: PointConfiguration, h: int | None = None) -> VectorConfiguration:
    """Balanced odd vector configuration whose relations are spanned by the graded lift."""
    if not isinstance(points, PointConfiguration):
        points = PointConfiguration(points)
    d = points.n - 2 * points.m - 1
    if d == 0:
        raise TorusCase("n = 2m + 1: the dual configuration is 0-dimensional (compact complex torus case)")
    K = kernel_basis(points.lifted())
    return VectorConfiguration(tuple(tuple(col) for col in transpose(K)), h)


def _flatten_matrix_rows(rows, fld):
    """Rational rows: each row of field scalars becomes ``degree`` coefficient rows."""
    D = fld.degree if fld else 1
    out = []
    for row in rows:
        coeffs = [coefficients(x, fld) for x in row]
        for k in range(D):
            out.append([c[k] for c in coeffs])
    return out


def rationality_invariants(V: VectorConfiguration) -> tuple:
    """``(a(V), b(V))``: dims of the largest rational subspace inside and the
    smallest rational subspace containing ``Rel(V)``."""
    n, d = V.n, V.d
    fld = V.field
    if fld is None:
        return n - d, n - d
    if not isinstance(fld, AlgebraicField):
        raise UnsupportedField("entries must be rational or in one Q(theta)")
    # rational relations = common kernel of all theta-coefficient matrices
    stacked = _flatten_matrix_rows(V.matrix(), fld)
    a = n - rank(stacked)
    comps = _flatten_matrix_rows(relations(V), fld)
    b = rank(comps)
    return a, b


def is_rational(V: VectorConfiguration) -> bool:
    a, _ = rationality_invariants(V)
    return a == V.n - V.d


@dataclass(frozen=True)
class LeafType:
    torus_rank: int
    euclidean_rank: int
    all_leaves_closed: bool

    def describe(self) -> str:
        if self.all_leaves_closed:
            return "closed torus leaves"
        parts = []
        if self.torus_rank:
            parts.append(f"(S^1)^{self.torus_rank}")
        if self.euclidean_rank:
            parts.append(f"R^{self.euclidean_rank}")
        return " x ".join(parts) or "point"


def leaf_type(V: VectorConfiguration, invariants: tuple | None = None) -> LeafType:
    """Topology ``(S^1)^(a-1) x R^(2m-a+1)`` of the generic leaf."""
    if not (is_balanced(V) and is_odd(V)):
        raise NotBalancedOdd("leaf type needs a balanced odd configuration")
    m = (V.n - V.d - 1) // 2
    a, b = invariants if invariants is not None else rationality_invariants(V)
    return LeafType(a - 1, 2 * m - a + 1, a == b == 2 * m + 1)


@dataclass(frozen=True)
class Quasilattice:
    """``Span_Z`` of the generators, stored through rational coordinates.

    Vectors over ``Q(theta)`` are flattened coordinate-by-coordinate into
    ``d * degree`` rationals; the Z-module rank is the rank of that lattice.
    """

    generators: tuple
    zmodule_rank: int
    is_lattice: bool
    lattice: Lattice = dc_field(repr=False, compare=False)
    field: AlgebraicField | None = dc_field(default=None, repr=False)

    def flatten(self, v: Sequence[Scalar]) -> list:
        return [c for x in v for c in coefficients(_scalar(x), self.field)]

    def __contains__(self, v) -> bool:
        return self.lattice.coordinates(self.flatten(v)) is not None

    def basis(self) -> list:
        """Z-basis of the lattice in ambient coordinates (lattice case only)."""
        if not self.is_lattice:
            raise NotALattice("a dense quasilattice has no Z-basis of rank d")
        D = self.field.degree if self.field else 1
        out = []
        for row in self.lattice.basis_vectors():
            if self.field is None:
                out.append(row)
            else:
                out.append([FieldElement(self.field, row[i * D:(i + 1) * D]) for i in range(len(row) // D)])
        return out


def quasilattice_info(V, field: AlgebraicField | None = None) -> Quasilattice:
    vecs = V.vectors if isinstance(V, VectorConfiguration) else tuple(tuple(_scalar(x) for x in v) for v in V)
    fld = field if field is not None else common_field(x for v in vecs for x in v)
    if fld is not None and not isinstance(fld, AlgebraicField):
        raise UnsupportedField("entries must be rational or in one Q(theta)")
    d = len(vecs[0])
    flat = [[c for x in v for c in coefficients(x, fld)] for v in vecs]
    lat = Lattice(flat)
    zrank = lat.rank
    return Quasilattice(tuple(vecs), zrank, zrank == d, lat, fld)


def is_primitive(v: Sequence[Scalar], Q: Quasilattice) -> bool:
    """True iff ``v`` is not a proper integer multiple of another lattice vector."""
    if not Q.is_lattice:
        raise NotALattice("primitivity is undefined in a dense quasilattice")
    coords = Q.lattice.coordinates(Q.flatten(v))
    if coords is None:
        raise NotAMember(f"{list(v)} is not in the lattice")
    return math.gcd(*coords) == 1
