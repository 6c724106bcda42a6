"""Exact linear algebra over rationals or a single algebraic field.

Matrices are plain row-major lists of lists of scalars.  Purely rational
input is cleared to integers and handed to the fraction-free kernels in
:mod:`lvmbkit._kernels`; algebraic input is eliminated generically.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from ._kernels import int_det, int_hnf, int_rank
from .field import FieldElement, Scalar

Matrix = list  # list[list[Scalar]]

__all__ = [
    "Matrix",
    "Lattice",
    "det",
    "dot",
    "hnf",
    "is_rational_matrix",
    "kernel_basis",
    "mat_mul",
    "mat_vec",
    "rank",
    "rref",
    "same_row_space",
    "solve",
    "transpose",
    "integer_rows",
    "inverse",
]


def transpose(M: Sequence[Sequence[Scalar]]) -> list:
    return [list(col) for col in zip(*M)]


def dot(u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
    total = 0
    for a, b in zip(u, v):
        if a and b:
            total = total + a * b
    return total


def mat_vec(M: Sequence[Sequence[Scalar]], v: Sequence[Scalar]) -> list:
    return [dot(row, v) for row in M]


def mat_mul(A, B) -> list:
    cols = transpose(B)
    return [[dot(row, col) for col in cols] for row in A]


def is_rational_matrix(M) -> bool:
    return all(not isinstance(x, FieldElement) for row in M for x in row)


def integer_rows(M) -> list:
    """Scale each row of a rational matrix by the lcm of its denominators."""
    out = []
    for row in M:
        row = [Fraction(x) for x in row]
        den = math.lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * den) for x in row])
    return out


def _generic_rank(M) -> int:
    a = [list(r) for r in M]
    m = len(a)
    n = len(a[0]) if m else 0
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        for i in range(r + 1, m):
            f = a[i][c]
            if f:
                f = f * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == m:
            break
    return r


def rank(M: Sequence[Sequence[Scalar]]) -> int:
    """Exact rank."""
    if not M or not len(M[0]):
        return 0
    if is_rational_matrix(M):
        return int_rank(integer_rows(M))
    return _generic_rank(M)


def det(M: Sequence[Sequence[Scalar]]) -> Scalar:
    n = len(M)
    if n == 0:
        return Fraction(1)
    if is_rational_matrix(M):
        rows = [[Fraction(x) for x in row] for row in M]
        scale = Fraction(1)
        ints = []
        for row in rows:
            den = math.lcm(*(x.denominator for x in row))
            scale *= den
            ints.append([int(x * den) for x in row])
        return Fraction(int_det(ints)) / scale
    a = [list(r) for r in M]
    total = 1
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c]), None)
        if p is None:
            return 0 * a[0][0]
        if p != c:
            a[c], a[p] = a[p], a[c]
            total = -total
        total = total * a[c][c]
        inv = 1 / a[c][c]
        for i in range(c + 1, n):
            f = a[i][c]
            if f:
                f = f * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return total


def _to_field(x):
    return Fraction(x) if isinstance(x, int) else x


def rref(M: Sequence[Sequence[Scalar]]):
    """Reduced row echelon form and pivot columns (pivots normalised to 1)."""
    a = [[_to_field(x) for x in row] for row in M]
    m = len(a)
    n = len(a[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m):
            if i != r:
                f = a[i][c]
                if f:
                    a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def kernel_basis(M: Sequence[Sequence[Scalar]], ncols: int | None = None) -> list:
    """Canonical basis of the right kernel ``{x : M x = 0}``, one vector per row.

    The basis vector attached to free column ``f`` has a 1 in position ``f``,
    zeros in the other free positions and is ordered by ``f``.
    """
    n = len(M[0]) if M else (ncols or 0)
    if not M:
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    R, pivots = rref(M)
    zero = 0 * R[0][0] if R else Fraction(0)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [zero] * n
        v[f] = zero + 1
        for row, p in zip(R, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def solve(A: Sequence[Sequence[Scalar]], b: Sequence[Scalar]):
    """A particular solution of ``A x = b`` (free variables zero), or None."""
    n = len(A[0]) if A else 0
    aug = [list(row) + [rhs] for row, rhs in zip(A, b)]
    R, pivots = rref(aug)
    if n in pivots:
        return None
    zero = Fraction(0)
    x = [zero] * n
    for row, p in zip(R, pivots):
        x[p] = row[n]
    return x


def inverse(M: Sequence[Sequence[Scalar]]):
    """Inverse of a square matrix, or None when singular."""
    n = len(M)
    one, zero = Fraction(1), Fraction(0)
    aug = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(M)]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        return None
    return [row[n:] for row in R]


def same_row_space(A, B) -> bool:
    """Mutual containment of row spaces, decided by ranks."""
    ra, rb = rank(A), rank(B)
    return ra == rb and rank(list(A) + list(B)) == ra


def hnf(M: Sequence[Sequence[int]]):
    """Row-style Hermite normal form of an integer matrix: ``(H, U)`` with ``H = U M``."""
    rows = []
    for row in M:
        out = []
        for x in row:
            x = Fraction(x)
            if x.denominator != 1:
                raise ValueError("hnf expects integer entries; clear denominators first")
            out.append(int(x))
        rows.append(out)
    return int_hnf(rows)


class Lattice:
    """Z-span of finitely many rational vectors.

    The generators are scaled by a common ``denominator`` so the HNF runs on
    integers; ``basis`` holds the nonzero HNF rows in those scaled units.
    """

    def __init__(self, generators: Sequence[Sequence[Scalar]], dim: int | None = None):
        gens = [[Fraction(x) for x in g] for g in generators]
        self.dim = len(gens[0]) if gens else (dim or 0)
        den = math.lcm(*(x.denominator for g in gens for x in g)) if gens else 1
        self.denominator = den
        scaled = [[int(x * den) for x in g] for g in gens]
        if scaled:
            H, _ = int_hnf(scaled)
            self.basis = [row for row in H if any(row)]
        else:
            self.basis = []
        self.pivots = [next(j for j, x in enumerate(row) if x) for row in self.basis]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def basis_vectors(self) -> list:
        """HNF basis in the original (unscaled) coordinates."""
        return [[Fraction(x, self.denominator) for x in row] for row in self.basis]

    def coordinates(self, v: Sequence[Scalar]):
        """Integer coordinates of ``v`` in :meth:`basis_vectors`, or None if ``v`` is not in the lattice."""
        w = [Fraction(x) * self.denominator for x in v]
        if any(x.denominator != 1 for x in w):
            return None
        w = [int(x) for x in w]
        coords = []
        for row, c in zip(self.basis, self.pivots):
            if any(w[:c]):
                return None
            q, rem = divmod(w[c], row[c])
            if rem:
                return None
            coords.append(q)
            if q:
                w = [x - q * y for x, y in zip(w, row)]
        if any(w):
            return None
        return coords

    def __contains__(self, v) -> bool:
        return self.coordinates(v) is not None

    def __eq__(self, other):
        if not isinstance(other, Lattice):
            return NotImplemented
        return self.dim == other.dim and self.rank == other.rank and all(
            v in other for v in self.basis_vectors()
        ) and all(v in self for v in other.basis_vectors())

    def __repr__(self):
        return f"Lattice(rank={self.rank}, basis={[[str(x) for x in r] for r in self.basis_vectors()]})"
