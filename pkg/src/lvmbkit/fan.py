"""Triangulations of vector configurations and complete simplicial fans.

Indices are 0-based in memory; ``Triangulation.from_one_based`` and
``Triangulation.one_based`` translate at the I/O boundary.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable

from .configuration import VectorConfiguration
from .errors import CapExceeded, DimensionError, NotValidated, WrongCardinality
from .field import sign
from .linalg import dot, inverse, kernel_basis, mat_vec, rank, transpose
from .lp import Infeasible, LinearSystem, lp_feasible, verify_certificate

__all__ = [
    "DEFAULT_SEED",
    "Triangulation",
    "FanCertificate",
    "BettiReport",
    "validate_fan",
    "verify_failure",
    "covering_probe",
    "fvector",
    "hvector",
    "betti_numbers",
    "shelling_order",
    "is_shelling",
    "shelling_h_vector",
    "reindex_ghosts_last",
]

DEFAULT_SEED = 0x5EED


@dataclass(frozen=True)
class Triangulation:
    """Maximal simplices (``d``-subsets of ``range(n)``) of a candidate fan."""

    n: int
    d: int
    simplices: frozenset

    def __post_init__(self):
        simplices = frozenset(frozenset(s) for s in self.simplices)
        if not simplices:
            raise ValueError("a triangulation needs at least one maximal simplex")
        for s in simplices:
            if len(s) != self.d:
                raise WrongCardinality(f"simplex {sorted(s)} does not have {self.d} elements")
            if any(not 0 <= i < self.n for i in s):
                raise ValueError(f"simplex {sorted(s)} has an index outside 0..{self.n - 1}")
        object.__setattr__(self, "simplices", simplices)

    @classmethod
    def from_one_based(cls, n: int, d: int, simplices: Iterable[Iterable[int]]) -> "Triangulation":
        return cls(n, d, frozenset(frozenset(i - 1 for i in s) for s in simplices))

    def one_based(self) -> list:
        return [[i + 1 for i in s] for s in self.sorted_simplices()]

    def sorted_simplices(self) -> list:
        return sorted(tuple(sorted(s)) for s in self.simplices)

    @property
    def support(self) -> frozenset:
        return frozenset().union(*self.simplices)

    @property
    def ghost_indices(self) -> frozenset:
        return frozenset(range(self.n)) - self.support

    def __len__(self):
        return len(self.simplices)


@dataclass(frozen=True)
class FanCertificate:
    """Outcome of :func:`validate_fan`.

    ``check`` names the failed test (``independence``, ``wall``,
    ``intersection``, ``rays`` or ``covering``); ``witness`` holds the data that
    :func:`verify_failure` re-checks from scratch.
    """

    status: str
    check: str | None = None
    witness: dict = field(default_factory=dict)
    lp_certificates: tuple = field(default=(), repr=False, compare=False)

    @property
    def ok(self) -> bool:
        return self.status == "CompleteSimplicialFan"

    def to_json(self) -> dict:
        out = {"status": self.status}
        if self.check:
            out["check"] = self.check
            out["witness"] = _witness_json(self.witness)
        return out


def _witness_json(w: dict) -> dict:
    from .io import scalar_to_json

    out = {}
    for key, val in w.items():
        if key in ("simplex", "wall", "sigma", "tau"):
            out[key] = sorted(i + 1 for i in val)
        elif key == "cofaces":
            out[key] = [sorted(i + 1 for i in s) for s in val]
        elif key == "index":
            out[key] = val + 1
        elif key in ("point", "direction", "sigma_coords", "tau_coords"):
            out[key] = [scalar_to_json(x) for x in val]
        else:
            out[key] = val
    return out


def _check_shapes(V: VectorConfiguration, T: Triangulation):
    if T.n != V.n or T.d != V.d:
        raise DimensionError(f"triangulation is for (n={T.n}, d={T.d}) but configuration has (n={V.n}, d={V.d})")


def _wall_normal(V, wall):
    if not wall:
        return [Fraction(1)]
    return kernel_basis([list(V.vectors[w]) for w in sorted(wall)])[0]


def _separation_system(V, sigma, tau) -> LinearSystem:
    """``u`` positive on sigma\\tau, negative on tau\\sigma, zero on the common face."""
    system = LinearSystem(V.d)
    for i in sorted(sigma - tau):
        system.add(V.vectors[i], ">", 0)
    for j in sorted(tau - sigma):
        system.add([-x for x in V.vectors[j]], ">", 0)
    for k in sorted(sigma & tau):
        system.add(V.vectors[k], "=", 0)
    return system


def _intersection_witness(V, sigma, tau, cert: Infeasible) -> dict:
    """Turn separation multipliers into a point of both cones outside the common face."""
    y = cert.farkas
    a, b, c = sorted(sigma - tau), sorted(tau - sigma), sorted(sigma & tau)
    ya = dict(zip(a, y[: len(a)]))
    yb = dict(zip(b, y[len(a): len(a) + len(b)]))
    z = dict(zip(c, y[len(a) + len(b):]))
    lam = {i: ya[i] for i in a}
    mu = {j: yb[j] for j in b}
    for k, zk in z.items():
        lam[k] = zk if zk > 0 else Fraction(0)
        mu[k] = -zk if zk < 0 else Fraction(0)
    sig, ta = sorted(sigma), sorted(tau)
    point = [sum((lam[i] * V.vectors[i][r] for i in sig), Fraction(0)) for r in range(V.d)]
    return {
        "sigma": tuple(sig),
        "tau": tuple(ta),
        "point": tuple(point),
        "sigma_coords": tuple(lam[i] for i in sig),
        "tau_coords": tuple(mu[j] for j in ta),
    }


def covering_probe(V: VectorConfiguration, T: Triangulation, seed: int = DEFAULT_SEED, samples: int = 100):
    """Randomised completeness cross-check.

    Every sampled rational direction must lie in some closed maximal cone,
    and in exactly one when it avoids all walls.  Returns the first offending
    direction, or None.
    """
    rng = random.Random(seed)
    inverses = []
    for s in T.sorted_simplices():
        inv = inverse(transpose([list(V.vectors[i]) for i in s]))
        if inv is None:
            return None
        inverses.append(inv)
    for _ in range(samples):
        x = [Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 1000)) for _ in range(V.d)]
        if not any(x):
            continue
        closed = 0
        on_wall = False
        for inv in inverses:
            coords = mat_vec(inv, x)
            if all(sign(c) >= 0 for c in coords):
                closed += 1
                if any(sign(c) == 0 for c in coords):
                    on_wall = True
        if closed == 0 or (not on_wall and closed != 1):
            return tuple(x)
    return None


def validate_fan(V: VectorConfiguration, T: Triangulation, *, seed: int = DEFAULT_SEED,
                 samples: int = 100) -> FanCertificate:
    """Certify that the cones over ``T`` form a complete simplicial fan.

    Checks run in order: independence of every simplex, the wall condition
    (each codimension-one face in exactly two simplices whose opposite
    vertices lie strictly on opposite sides), proper pairwise intersection
    by exact LP separation, and that indices ``< V.h`` all carry rays.  A
    seeded covering probe then cross-checks completeness.
    """
    _check_shapes(V, T)
    d = V.d
    simplices = T.sorted_simplices()

    for s in simplices:
        if rank([list(V.vectors[i]) for i in s]) != d:
            return FanCertificate("Failure", "independence", {"simplex": tuple(s)})

    walls: dict = {}
    for s in simplices:
        for w in itertools.combinations(s, d - 1):
            walls.setdefault(frozenset(w), []).append(frozenset(s))
    for w in sorted(walls, key=lambda f: tuple(sorted(f))):
        cof = walls[w]
        if len(cof) != 2:
            return FanCertificate("Failure", "wall", {"wall": tuple(sorted(w)), "cofaces": tuple(tuple(sorted(c)) for c in cof)})
        u = _wall_normal(V, w)
        (a,), (b,) = cof[0] - w, cof[1] - w
        if sign(dot(u, V.vectors[a])) * sign(dot(u, V.vectors[b])) != -1:
            return FanCertificate("Failure", "wall", {
                "wall": tuple(sorted(w)), "cofaces": tuple(tuple(sorted(c)) for c in cof), "same_side": True})

    certs = []
    for s, t in itertools.combinations(simplices, 2):
        sigma, tau = frozenset(s), frozenset(t)
        system = _separation_system(V, sigma, tau)
        cert = lp_feasible(system)
        certs.append((system, cert))
        if not cert.feasible:
            return FanCertificate("Failure", "intersection", _intersection_witness(V, sigma, tau, cert), tuple(certs))

    support = T.support
    for i in range(V.h):
        if i not in support:
            return FanCertificate("Failure", "rays", {"index": i}, tuple(certs))

    x = covering_probe(V, T, seed, samples)
    if x is not None:
        return FanCertificate("Failure", "covering", {"direction": x}, tuple(certs))
    return FanCertificate("CompleteSimplicialFan", None, {}, tuple(certs))


def verify_failure(V: VectorConfiguration, T: Triangulation, cert: FanCertificate) -> bool:
    """Independently re-check the witness attached to a failed :class:`FanCertificate`.

    Also re-verifies every LP certificate carried along.
    """
    if not all(verify_certificate(sys_, c) for sys_, c in cert.lp_certificates):
        return False
    if cert.ok:
        return True
    w = cert.witness
    d = V.d
    if cert.check == "independence":
        return rank([list(V.vectors[i]) for i in w["simplex"]]) < d
    if cert.check == "wall":
        wall = frozenset(w["wall"])
        cof = [frozenset(s) for s in T.simplices if wall <= s]
        if len(cof) != 2:
            return True
        u = _wall_normal(V, wall)
        (a,), (b,) = cof[0] - wall, cof[1] - wall
        return sign(dot(u, V.vectors[a])) * sign(dot(u, V.vectors[b])) != -1
    if cert.check == "intersection":
        sigma, tau = w["sigma"], w["tau"]
        lam, mu = w["sigma_coords"], w["tau_coords"]
        if any(x < 0 for x in lam) or any(x < 0 for x in mu):
            return False
        p1 = [sum((l * V.vectors[i][r] for l, i in zip(lam, sigma)), Fraction(0)) for r in range(d)]
        p2 = [sum((m * V.vectors[j][r] for m, j in zip(mu, tau)), Fraction(0)) for r in range(d)]
        if p1 != p2 or tuple(p1) != tuple(w["point"]):
            return False
        common = set(sigma) & set(tau)
        outside = any(l != 0 for l, i in zip(lam, sigma) if i not in common) or any(
            m != 0 for m, j in zip(mu, tau) if j not in common)
        return outside
    if cert.check == "rays":
        return w["index"] < V.h and w["index"] not in T.support
    if cert.check == "covering":
        x = list(w["direction"])
        closed = 0
        on_wall = False
        for s in T.sorted_simplices():
            inv = inverse(transpose([list(V.vectors[i]) for i in s]))
            coords = mat_vec(inv, x)
            if all(c >= 0 for c in coords):
                closed += 1
                on_wall = on_wall or any(c == 0 for c in coords)
        return closed == 0 or (not on_wall and closed != 1)
    return False


# ---------------------------------------------------------------------------
# face numbers

def fvector(T: Triangulation) -> tuple:
    """``(f_{-1}, f_0, ..., f_{d-1})``: number of faces with ``i`` vertices, ``i = 0..d``."""
    faces = set()
    for s in T.simplices:
        for k in range(T.d + 1):
            faces.update(frozenset(c) for c in itertools.combinations(sorted(s), k))
    counts = [0] * (T.d + 1)
    for f in faces:
        counts[len(f)] += 1
    return tuple(counts)


def hvector(T: Triangulation) -> tuple:
    f = fvector(T)
    d = T.d
    return tuple(
        sum((-1) ** (k - i) * comb(d - i, k - i) * f[i] for i in range(k + 1)) for k in range(d + 1)
    )


@dataclass(frozen=True)
class BettiReport:
    betti: tuple
    h_vector: tuple
    h_vector_valid: str  # "certified" | "assumed"
    reason: str

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** i * b for i, b in enumerate(self.betti))


def betti_numbers(V: VectorConfiguration, T: Triangulation, *, shelling_cap: int = 12,
                  certificate: FanCertificate | None = None) -> BettiReport:
    """Betti numbers ``b_{2i} = h_i``, odd ones zero, flagged as certified when
    a shelling or a regularity certificate backs the h-vector formula."""
    cert = certificate or validate_fan(V, T)
    if not cert.ok:
        raise NotValidated(f"not a complete simplicial fan ({cert.check} check failed)")
    h = hvector(T)
    betti = []
    for hk in h:
        betti.extend([hk, 0])
    betti = tuple(betti[:-1])
    try:
        order = shelling_order(T, cap=shelling_cap)
    except CapExceeded:
        order = None
    if order is not None:
        return BettiReport(betti, h, "certified", "shellable")
    from .polytopal import regularity_certificate

    if regularity_certificate(V, T, certificate=cert).heights is not None:
        return BettiReport(betti, h, "certified", "regular")
    return BettiReport(betti, h, "assumed", "no shelling found within cap and not regular")


# ---------------------------------------------------------------------------
# shellability

def _restriction_ok(F, earlier, d) -> bool:
    inters = [F & G for G in earlier]
    codim1 = [I for I in inters if len(I) == d - 1]
    return all(any(I <= J for J in codim1) for I in inters)


def is_shelling(T: Triangulation, order) -> bool:
    facets = [frozenset(s) for s in order]
    if sorted(tuple(sorted(f)) for f in facets) != T.sorted_simplices():
        return False
    return all(_restriction_ok(F, facets[:k], T.d) for k, F in enumerate(facets) if k)


def shelling_h_vector(order, d: int) -> tuple:
    """h-vector read off a shelling: count facets by the size of their restriction face."""
    facets = [frozenset(s) for s in order]
    h = [0] * (d + 1)
    for k, F in enumerate(facets):
        restriction = {v for v in F if any(F - {v} <= G for G in facets[:k])}
        h[len(restriction)] += 1
    return tuple(h)


def shelling_order(T: Triangulation, cap: int = 12):
    """Backtracking search for a shelling order; None when none exists."""
    if len(T) > cap:
        raise CapExceeded(f"{len(T)} simplices exceed the shelling cap {cap}")
    facets = [frozenset(s) for s in T.sorted_simplices()]
    d = T.d
    dead = set()

    def extend(order, used):
        if len(order) == len(facets):
            return order
        if used in dead:
            return None
        for i, F in enumerate(facets):
            if i in used:
                continue
            if order and not _restriction_ok(F, [facets[j] for j in order], d):
                continue
            found = extend(order + [i], used | {i})
            if found is not None:
                return found
        dead.add(used)
        return None

    result = extend([], frozenset())
    if result is None:
        return None
    return [tuple(sorted(facets[i])) for i in result]


def reindex_ghosts_last(V: VectorConfiguration, T: Triangulation):
    """Permute indices so that ghosts come last and set ``h`` to the number of ray indices.

    Returns ``(V', T', perm)`` with ``perm[new] = old``.
    """
    _check_shapes(V, T)
    support = T.support
    perm = [i for i in range(V.n) if i in support] + [i for i in range(V.n) if i not in support]
    where = {old: new for new, old in enumerate(perm)}
    V2 = VectorConfiguration(tuple(V.vectors[i] for i in perm), len(support))
    T2 = Triangulation(V.n, V.d, frozenset(frozenset(where[i] for i in s) for s in T.simplices))
    return V2, T2, perm
