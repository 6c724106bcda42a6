"""Polytope presentations ``P = {mu : <mu, v_j> >= l_j}`` and the Delzant-type checks.

Sign convention: normals point inward, ``rho_j = <mu, v_j> - l_j`` is the
squared-modulus coordinate of the j-th half-space, so ``rho >= 0`` on ``P``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .configuration import (
    Quasilattice,
    VectorConfiguration,
    _scalar,
    is_balanced,
    is_primitive,
    quasilattice_info,
    relations,
    relations_with_ones,
)
from .errors import NotALattice, NotFullDimensional, NotSimple, Unbounded, UnsupportedField
from .fan import Triangulation
from .field import AlgebraicField, coefficients, common_field, sign
from .linalg import Lattice, det, dot, rank, solve, transpose
from .lp import LinearSystem, lp_feasible

__all__ = [
    "PolytopePresentation",
    "PresentationReport",
    "DelzantReport",
    "MomentData",
    "SliceReport",
    "validate_presentation",
    "vertices",
    "normal_fan",
    "normal_fan_heights",
    "delzant_check",
    "moment_data",
    "reduced_polytope_check",
    "n_group_connected",
    "prefix_spans_quasilattice",
]


@dataclass(frozen=True)
class PolytopePresentation:
    """Half-spaces ``<mu, v_j> >= l_j``; the first ``h`` are the designated facets."""

    vectors: tuple
    levels: tuple
    h: int | None = None
    quasilattice: Quasilattice | None = field(default=None, compare=False)

    def __post_init__(self):
        vecs = tuple(tuple(_scalar(x) for x in v) for v in self.vectors)
        levels = tuple(_scalar(x) for x in self.levels)
        if len(levels) != len(vecs):
            raise ValueError(f"{len(vecs)} normals but {len(levels)} levels")
        object.__setattr__(self, "vectors", vecs)
        object.__setattr__(self, "levels", levels)
        h = len(vecs) if self.h is None else self.h
        if not 0 < h <= len(vecs):
            raise ValueError(f"h={h} outside 1..{len(vecs)}")
        object.__setattr__(self, "h", h)
        d = len(vecs[0])
        n = len(vecs)
        if rank([list(v) for v in vecs]) != d:
            raise Unbounded("normals do not span: P contains a line")
        # bounded iff some relation has all coefficients strictly positive
        pos = LinearSystem(n)
        for j in range(n):
            pos.add([int(k == j) for k in range(n)], ">", 0)
        for c in range(d):
            pos.add([v[c] for v in vecs], "=", 0)
        if not lp_feasible(pos).feasible:
            raise Unbounded("normals do not positively span: P is unbounded")
        interior = LinearSystem(d)
        for v, l in zip(vecs, levels):
            if any(v):
                interior.add(v, ">", l)
            elif sign(l) > 0:
                raise NotFullDimensional("a zero normal with positive level makes P empty")
        cert = lp_feasible(interior)
        if not cert.feasible:
            raise NotFullDimensional("P has empty interior")
        object.__setattr__(self, "_interior_point", tuple(cert.witness))

    @property
    def n(self) -> int:
        return len(self.vectors)

    @property
    def d(self) -> int:
        return len(self.vectors[0])

    def configuration(self) -> VectorConfiguration:
        return VectorConfiguration(self.vectors, self.h)

    def slack(self, mu) -> tuple:
        """``rho_j = <mu, v_j> - l_j``."""
        return tuple(dot(v, mu) - l for v, l in zip(self.vectors, self.levels))

    def contains(self, mu) -> bool:
        return all(sign(r) >= 0 for r in self.slack(mu))

    def get_quasilattice(self) -> Quasilattice:
        return self.quasilattice or quasilattice_info(self.vectors)


def _vertex_table(P: PolytopePresentation) -> dict:
    """Map each vertex to the set of all indices tight at it."""
    d = P.d
    nonzero = [j for j in range(P.n) if any(P.vectors[j])]
    found: dict = {}
    for combo in itertools.combinations(nonzero, d):
        A = [list(P.vectors[j]) for j in combo]
        if rank(A) < d:
            continue
        mu = solve(A, [P.levels[j] for j in combo])
        mu = tuple(mu)
        if mu in found or not P.contains(mu):
            continue
        rho = P.slack(mu)
        found[mu] = frozenset(j for j in range(P.n) if sign(rho[j]) == 0)
    return dict(sorted(found.items(), key=lambda kv: tuple(float(x) for x in kv[0])))


def vertices(P: PolytopePresentation) -> list:
    return list(_vertex_table(P))


def _affine_dim(points) -> int:
    if not points:
        return -1
    base = points[0]
    return rank([[x - y for x, y in zip(p, base)] for p in points[1:]]) if len(points) > 1 else 0


@dataclass(frozen=True)
class PresentationReport:
    """Per-index classification: ``facet``, ``strictly-redundant`` or ``degenerate``."""

    h: int
    kinds: tuple
    minima: tuple
    primitive: tuple | None
    duplicate_facets: tuple
    vertices: tuple

    @property
    def ok(self) -> bool:
        """First ``h`` indices are distinct facets and no later index is a facet."""
        return (
            all(k == "facet" for k in self.kinds[: self.h])
            and all(k != "facet" for k in self.kinds[self.h:])
            and not self.duplicate_facets
        )

    @property
    def degenerate_indices(self) -> tuple:
        return tuple(j for j, k in enumerate(self.kinds) if k == "degenerate")


def validate_presentation(P: PolytopePresentation) -> PresentationReport:
    """Classify every half-space against ``P`` via its vertices.

    Facet: the minimum of ``rho_j`` over ``P`` is 0 and attained on a face of
    dimension ``d - 1``.  Strictly redundant: the minimum is positive.
    Degenerate: the minimum is 0 on a smaller face (flagged, not rejected).
    """
    table = _vertex_table(P)
    verts = list(table)
    kinds, minima = [], []
    faces = []
    for j in range(P.n):
        values = [P.slack(mu)[j] for mu in verts]
        low = min(values)
        minima.append(low)
        touching = [mu for mu in verts if j in table[mu]]
        faces.append(frozenset(touching))
        if sign(low) > 0:
            kinds.append("strictly-redundant")
        elif _affine_dim(touching) == P.d - 1:
            kinds.append("facet")
        else:
            kinds.append("degenerate")
    seen: dict = {}
    dups = []
    for j in range(P.h):
        if kinds[j] == "facet":
            if faces[j] in seen:
                dups.append((seen[faces[j]], j))
            else:
                seen[faces[j]] = j
    Q = P.get_quasilattice()
    primitive = None
    if Q.is_lattice:
        primitive = tuple(is_primitive(P.vectors[j], Q) for j in range(P.h))
    return PresentationReport(P.h, tuple(kinds), tuple(minima), primitive, tuple(dups), tuple(verts))


def _facets_at(P: PolytopePresentation, table: dict, assume_simple: bool) -> dict:
    out = {}
    for mu, tight in table.items():
        facets = frozenset(j for j in tight if j < P.h)
        if not assume_simple and len(facets) != P.d:
            raise NotSimple(
                f"vertex {[str(x) for x in mu]} lies on {len(facets)} facet hyperplanes, expected {P.d}",
                vertex=mu,
                facets=sorted(facets),
            )
        out[mu] = facets
    return out


def normal_fan(P: PolytopePresentation, *, assume_simple: bool = False):
    """``(V, T)``: inward normals (ghosts kept, ``h`` preserved) and the facet sets at vertices."""
    table = _vertex_table(P)
    facets = _facets_at(P, table, assume_simple)
    V = VectorConfiguration(P.vectors, P.h)
    T = Triangulation(P.n, P.d, frozenset(facets.values()))
    return V, T


def normal_fan_heights(P: PolytopePresentation) -> tuple:
    """Heights ``-l_j`` that induce the normal fan."""
    return tuple(-l for l in P.levels)


@dataclass(frozen=True)
class DelzantReport:
    simple: bool
    rational: bool
    delzant: bool
    labels: tuple
    lerman_tolman: bool
    unimodular_vertices: tuple


def _lattice_coords(Lat: Lattice, flat) -> list:
    coords = Lat.coordinates(flat)
    if coords is None:
        raise NotALattice(f"{flat} is not in the lattice")
    return coords


def delzant_check(P: PolytopePresentation, L=None, *, assume_simple: bool = False) -> DelzantReport:
    """Unimodularity of the facet normals at every vertex with respect to ``L``.

    ``L`` may be a :class:`Quasilattice`, a :class:`Lattice` or a list of
    generators; it defaults to the presentation's quasilattice.  Labels
    ``m_j`` with ``v_j = m_j u_j``, ``u_j`` primitive, are always reported.
    """
    if L is None:
        Q = P.get_quasilattice()
    elif isinstance(L, Quasilattice):
        Q = L
    elif isinstance(L, Lattice):
        Q = Quasilattice(tuple(tuple(v) for v in L.basis_vectors()), L.rank, L.rank == P.d, L, None)
    else:
        Q = quasilattice_info(L)
    if not Q.is_lattice:
        raise NotALattice("Delzant check needs a lattice")
    Lat = Q.lattice
    if Lat.rank != P.d:
        raise NotALattice("lattice rank differs from the dimension")
    table = _vertex_table(P)
    try:
        facets = _facets_at(P, table, assume_simple)
        simple = True
    except NotSimple:
        facets = {mu: frozenset(j for j in tight if j < P.h) for mu, tight in table.items()}
        simple = False
    coords = [_lattice_coords(Lat, Q.flatten(P.vectors[j])) for j in range(P.h)]
    labels = tuple(math.gcd(*c) for c in coords)
    prims = [[x // g for x in c] for c, g in zip(coords, labels)]
    uni, lt = [], True
    for mu, fs in facets.items():
        fs = sorted(fs)
        if len(fs) != P.d:
            uni.append(False)
            lt = False
            continue
        uni.append(abs(det([coords[j] for j in fs])) == 1)
        lt = lt and abs(det([prims[j] for j in fs])) == 1
    delzant = simple and all(uni)
    return DelzantReport(simple, True, delzant, labels, simple and lt, tuple(uni))


@dataclass(frozen=True)
class MomentData:
    """``M`` is ``n x (n - d)``; its columns span ``Rel(V)``."""

    M: tuple
    levels: tuple
    r: object | None

    @property
    def columns(self) -> list:
        return transpose(self.M)


def moment_data(P: PolytopePresentation) -> MomentData:
    V = P.configuration()
    balanced = is_balanced(V)
    rel = relations_with_ones(V) if balanced else relations(V)
    M = tuple(tuple(row) for row in transpose(rel))
    r = -sum(P.levels, Fraction(0)) if balanced else None
    return MomentData(M, P.levels, r)


@dataclass(frozen=True)
class SliceReport:
    """Outcome of the squared-modulus slice check.

    ``images`` are the rho-images of the vertices of ``P``; ``slice_vertices``
    are the vertices of ``{rho >= 0 : (rho + l) M = 0}``.
    """

    ok: bool
    slice_dim: int
    images: tuple
    slice_vertices: tuple
    bijection: bool
    sphere_identity: bool | None
    radius: object | None
    singular_level_set: bool
    note: str


def _in_slice(rho, levels, M) -> bool:
    if any(sign(x) < 0 for x in rho):
        return False
    shifted = [x + l for x, l in zip(rho, levels)]
    return all(dot(shifted, col) == 0 for col in transpose(M)) if M and M[0] else True


def reduced_polytope_check(P: PolytopePresentation) -> SliceReport:
    """Check that the slice ``{rho >= 0 : (rho + l) M = 0}`` is the image of ``P``.

    Every vertex of ``P`` maps into the slice; the slice has dimension ``d``;
    every vertex of the slice pulls back to a vertex of ``P``; the two vertex
    sets correspond bijectively.  For balanced normals the identity
    ``sum(rho_j + l_j) = 0`` is checked on the slice.
    """
    md = moment_data(P)
    M = [list(row) for row in md.M]
    n, d = P.n, P.d
    levels = P.levels
    verts = vertices(P)
    images = [P.slack(mu) for mu in verts]
    maps_in = all(_in_slice(rho, levels, M) for rho in images)
    slice_dim = n - rank(transpose(M)) if M and M[0] else n
    # vertices of the slice: d coordinates forced to zero, the rest by the equations
    cols = transpose(M) if M and M[0] else []
    rhs = [-dot(levels, col) for col in cols]
    slice_vertices = {}
    for zeros in itertools.combinations(range(n), d):
        A = [list(col) for col in cols]
        b = list(rhs)
        for z in zeros:
            A.append([int(k == z) for k in range(n)])
            b.append(0)
        if rank(A) < n:
            continue
        rho = solve(A, b)
        if rho is None or any(sign(x) < 0 for x in rho):
            continue
        slice_vertices[tuple(rho)] = None
    slice_vertices = list(slice_vertices)
    pulled = []
    for rho in slice_vertices:
        mu = solve([list(v) for v in P.vectors], [x + l for x, l in zip(rho, levels)])
        pulled.append(tuple(mu) if mu is not None else None)
    vert_set = set(verts)
    bijection = (
        all(mu in vert_set for mu in pulled)
        and len(set(pulled)) == len(pulled) == len(verts)
        and set(map(tuple, images)) == set(slice_vertices)
    )
    sphere = None
    if md.r is not None:
        ones_col = [row[0] for row in M]
        sphere = all(x == 1 for x in ones_col) and all(
            sum(rho, Fraction(0)) == md.r for rho in slice_vertices
        )
    singular = any(sign(rho[j]) == 0 for rho in slice_vertices for j in range(P.h, n))
    note = "level set singular, reduced space unaffected" if singular else "level set regular"
    ok = maps_in and slice_dim == d and bijection and sphere is not False
    return SliceReport(ok, slice_dim, tuple(images), tuple(slice_vertices), bijection, sphere, md.r, singular, note)


def _span(vectors, fld) -> Lattice:
    flat = [[c for x in v for c in coefficients(_scalar(x), fld)] for v in vectors]
    return Lattice(flat)


def _target(vectors, Q, fld) -> Lattice:
    if Q is None:
        return _span(vectors, fld)
    if isinstance(Q, Quasilattice):
        return _span(Q.generators, fld)
    if isinstance(Q, Lattice):
        return Q
    return _span(Q, fld)


def n_group_connected(P_or_vectors, Q=None) -> bool:
    """Connectedness of the reduction group: ``Span_Z{v_1..v_n} = Q``.

    ``Q`` is the datum's quasilattice (taken from the presentation when set,
    otherwise the span of all normals); rational input is compared by HNF,
    ``Q(theta)`` input through flattened coefficients.
    """
    if isinstance(P_or_vectors, PolytopePresentation):
        vectors = P_or_vectors.vectors
        Q = Q if Q is not None else P_or_vectors.quasilattice
    else:
        vectors = tuple(tuple(_scalar(x) for x in v) for v in P_or_vectors)
    fld = common_field(x for v in vectors for x in v)
    if fld is not None and not isinstance(fld, AlgebraicField):
        raise UnsupportedField("entries must be rational or in one Q(theta)")
    return _span(vectors, fld) == _target(vectors, Q, fld)


def prefix_spans_quasilattice(P_or_vectors, h: int | None = None, Q=None) -> bool:
    """Whether the facet normals ``v_1..v_h`` alone already span ``Q``."""
    if isinstance(P_or_vectors, PolytopePresentation):
        vectors = P_or_vectors.vectors
        h = P_or_vectors.h if h is None else h
        Q = Q if Q is not None else P_or_vectors.quasilattice
    else:
        vectors = tuple(tuple(_scalar(x) for x in v) for v in P_or_vectors)
        h = len(vectors) if h is None else h
    fld = common_field(x for v in vectors for x in v)
    return _span(vectors[:h], fld) == _target(vectors, Q, fld)
