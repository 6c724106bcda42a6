"""LVMB data: bases, virtual chambers and the complement dictionary with fans."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .configuration import (
    LeafType,
    PointConfiguration,
    VectorConfiguration,
    balance_and_oddify,
    gale_dual,
    gale_dual_inverse,
    is_balanced,
    is_odd,
    leaf_type,
    rationality_invariants,
)
from .errors import CardinalityMismatch, NotABasis, NotAVirtualChamber, TorusCase, WrongCardinality
from .fan import Triangulation
from .linalg import rank, solve, transpose
from .lp import LinearSystem, lp_feasible, verify_certificate

__all__ = [
    "VirtualChamber",
    "LVMBDatum",
    "BosioICertificate",
    "ManifoldReport",
    "is_basis",
    "bosio_i",
    "bosio_ii",
    "bosio_ii_violations",
    "is_virtual_chamber",
    "is_chamber",
    "open_simplex_contains",
    "complements",
    "complements_inv",
    "datum_from_fan",
    "dual_data",
    "manifold_report",
]


@dataclass(frozen=True)
class VirtualChamber:
    """Candidate family of ``(2m+1)``-subsets of ``range(n)``."""

    n: int
    m: int
    bases: frozenset

    def __post_init__(self):
        bases = frozenset(frozenset(b) for b in self.bases)
        if not bases:
            raise ValueError("a virtual chamber needs at least one basis")
        k = 2 * self.m + 1
        for b in bases:
            if len(b) != k:
                raise WrongCardinality(f"{sorted(b)} does not have 2m+1 = {k} elements")
            if any(not 0 <= i < self.n for i in b):
                raise ValueError(f"{sorted(b)} has an index outside 0..{self.n - 1}")
        object.__setattr__(self, "bases", bases)

    @classmethod
    def from_one_based(cls, n: int, m: int, bases) -> "VirtualChamber":
        return cls(n, m, frozenset(frozenset(i - 1 for i in b) for b in bases))

    def sorted_bases(self) -> list:
        return sorted(tuple(sorted(b)) for b in self.bases)

    def one_based(self) -> list:
        return [[i + 1 for i in b] for b in self.sorted_bases()]

    @property
    def indispensable_indices(self) -> frozenset:
        return frozenset.intersection(*self.bases)

    def __len__(self):
        return len(self.bases)


def is_basis(tau, points: PointConfiguration) -> bool:
    """Affine independence of the ``2m+1`` points indexed by ``tau``."""
    tau = sorted(tau)
    if len(tau) != 2 * points.m + 1:
        raise WrongCardinality(f"{[i + 1 for i in tau]} does not have 2m+1 = {2 * points.m + 1} elements")
    if points.m == 0:
        return True
    base = points.points[tau[0]]
    diffs = [[x - y for x, y in zip(points.points[j], base)] for j in tau[1:]]
    return rank(diffs) == 2 * points.m


@dataclass(frozen=True)
class LVMBDatum:
    points: PointConfiguration
    chamber: VirtualChamber

    def __post_init__(self):
        if self.chamber.n != self.points.n or self.chamber.m != self.points.m:
            raise CardinalityMismatch(
                f"chamber is for (n={self.chamber.n}, m={self.chamber.m}), points have (n={self.points.n}, m={self.points.m})")
        for b in self.chamber.sorted_bases():
            if not is_basis(b, self.points):
                raise NotABasis(f"{[i + 1 for i in b]} is affinely dependent")

    @property
    def n(self) -> int:
        return self.points.n

    @property
    def m(self) -> int:
        return self.points.m


def _barycentric_rows(system: LinearSystem, points, basis, nu_offset, lam_offset, nvars):
    """Add ``lam > 0, sum lam = 1, sum lam_j p_j = nu`` for one basis."""
    one, zero = Fraction(1), Fraction(0)
    k = len(basis)
    for t in range(k):
        row = [zero] * nvars
        row[lam_offset + t] = one
        system.add(row, ">", 0)
    row = [zero] * nvars
    for t in range(k):
        row[lam_offset + t] = one
    system.add(row, "=", 1)
    width = len(points.points[0])
    for c in range(width):
        row = [zero] * nvars
        for t, j in enumerate(basis):
            row[lam_offset + t] = points.points[j][c]
        row[nu_offset + c] = zero - 1
        system.add(row, "=", 0)


def _common_point_system(points: PointConfiguration, bases) -> LinearSystem:
    k = 2 * points.m + 1
    nvars = 2 * points.m + k * len(bases)
    system = LinearSystem(nvars)
    for a, basis in enumerate(bases):
        _barycentric_rows(system, points, sorted(basis), 0, 2 * points.m + a * k, nvars)
    return system


@dataclass(frozen=True)
class BosioICertificate:
    """Pairwise open-simplex intersection check.

    ``failing_pair`` is the lexicographically first pair of bases whose open
    simplices are disjoint; ``lp`` holds ``(system, certificate)`` for every
    pair examined so the answers can be re-verified.
    """

    ok: bool
    failing_pair: tuple | None = None
    lp: tuple = field(default=(), repr=False)

    def verify(self) -> bool:
        return all(verify_certificate(s, c) for s, c in self.lp)


def bosio_i(datum: LVMBDatum) -> BosioICertificate:
    certs = []
    for alpha, beta in itertools.combinations(datum.chamber.sorted_bases(), 2):
        system = _common_point_system(datum.points, [alpha, beta])
        cert = lp_feasible(system)
        certs.append((system, cert))
        if not cert.feasible:
            return BosioICertificate(False, (alpha, beta), tuple(certs))
    return BosioICertificate(True, None, tuple(certs))


def bosio_ii_violations(chamber: VirtualChamber) -> list:
    """Every ``(tau, i)`` with ``i`` outside ``tau`` admitting no exchange ``j`` in ``tau``."""
    bases = chamber.bases
    out = []
    for tau in chamber.sorted_bases():
        ts = frozenset(tau)
        for i in range(chamber.n):
            if i in ts:
                continue
            if not any((ts - {j}) | {i} in bases for j in tau):
                out.append((tau, i))
    return out


def bosio_ii(chamber: VirtualChamber):
    """First exchange-property violation in lexicographic order, or None."""
    bases = chamber.bases
    for tau in chamber.sorted_bases():
        ts = frozenset(tau)
        for i in range(chamber.n):
            if i not in ts and not any((ts - {j}) | {i} in bases for j in tau):
                return (tau, i)
    return None


def is_virtual_chamber(points: PointConfiguration | LVMBDatum, chamber: VirtualChamber | None = None) -> bool:
    """Bosio's conditions (i) and (ii); False when some member is not a basis."""
    if isinstance(points, LVMBDatum):
        points, chamber = points.points, points.chamber
    if chamber.n != points.n or chamber.m != points.m:
        raise CardinalityMismatch("chamber and points disagree on n or m")
    if not all(is_basis(b, points) for b in chamber.sorted_bases()):
        return False
    if bosio_ii(chamber) is not None:
        return False
    return bosio_i(LVMBDatum(points, chamber)).ok


def is_chamber(datum: LVMBDatum):
    """One strict LP for a point ``nu`` interior to every basis simplex.

    Returns ``(system, certificate)``; on success ``nu`` is the first ``2m``
    witness coordinates.
    """
    system = _common_point_system(datum.points, datum.chamber.sorted_bases())
    return system, lp_feasible(system)


def open_simplex_contains(points: PointConfiguration, sigma, nu) -> bool:
    """Exact test ``nu`` in the interior of ``conv(points[sigma])`` (``sigma`` a basis)."""
    sigma = sorted(sigma)
    lifted = [[Fraction(1)] + list(points.points[j]) for j in sigma]
    lam = solve(transpose(lifted), [Fraction(1)] + list(nu))
    return lam is not None and all(x > 0 for x in lam)


def complements(T: Triangulation) -> VirtualChamber:
    n, d = T.n, T.d
    k = n - d
    if k % 2 == 0:
        raise CardinalityMismatch(f"n - d = {k} must be odd (= 2m + 1)")
    full = frozenset(range(n))
    return VirtualChamber(n, (k - 1) // 2, frozenset(full - s for s in T.simplices))


def complements_inv(chamber: VirtualChamber, n: int, d: int) -> Triangulation:
    if chamber.n != n or d + 2 * chamber.m + 1 != n:
        raise CardinalityMismatch(f"d + 2m + 1 = {d + 2 * chamber.m + 1} but n = {n}")
    if d == 0:
        raise TorusCase("n = 2m + 1: no simplices of positive size")
    full = frozenset(range(n))
    return Triangulation(n, d, frozenset(full - b for b in chamber.bases))


def dual_data(V: VectorConfiguration, T: Triangulation):
    """Gale dual points and complement family of a triangulated configuration.

    Unbalanced or even configurations are first extended by ghosts; returns
    ``(V', T', points, chamber)`` on the extended index range.  No basis
    check is made, so this also serves candidate families that fail.
    """
    if not (is_balanced(V) and is_odd(V)):
        V = balance_and_oddify(V)
        T = Triangulation(V.n, V.d, T.simplices)
    return V, T, gale_dual(V), complements(T)


def datum_from_fan(V: VectorConfiguration, T: Triangulation) -> LVMBDatum:
    _, _, points, chamber = dual_data(V, T)
    return LVMBDatum(points, chamber)


@dataclass(frozen=True)
class ManifoldReport:
    n: int
    m: int
    complex_dim: int
    is_torus_case: bool
    kaehler: str  # "No" | "TorusCase"
    leaf_type: LeafType
    rationality: tuple
    rational: bool


def manifold_report(datum: LVMBDatum, *, verified: bool = False) -> ManifoldReport:
    """Dimension and structure report for the manifold attached to ``datum``.

    ``verified=True`` skips the virtual-chamber check when the caller has
    already established it.
    """
    if not verified and not is_virtual_chamber(datum):
        raise NotAVirtualChamber("datum fails Bosio's conditions")
    n, m = datum.n, datum.m
    torus = n == 2 * m + 1
    if torus:
        ab = (n, n)
        lt = LeafType(n - 1, 0, True)
    else:
        V = gale_dual_inverse(datum.points)
        ab = rationality_invariants(V)
        lt = leaf_type(V, ab)
    return ManifoldReport(
        n=n,
        m=m,
        complex_dim=n - 1 - m,
        is_torus_case=torus,
        kaehler="TorusCase" if torus else "No",
        leaf_type=lt,
        rationality=ab,
        rational=ab[0] == 2 * m + 1,
    )
