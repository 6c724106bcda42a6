"""Worked configurations used by the tests, the acceptance suite and the CLI samples.

Coordinates for the two six-point LVMB data and the nested-triangles fan
were chosen here (no coordinates accompany those examples); the properties
claimed for them are asserted by the tests, never assumed.
"""
from __future__ import annotations

from fractions import Fraction

from .configuration import PointConfiguration, VectorConfiguration, balance_and_oddify
from .delzant import PolytopePresentation
from .fan import Triangulation
from .field import AlgebraicField
from .lvmb import LVMBDatum, VirtualChamber

__all__ = [
    "blowup",
    "blowup_extended",
    "polygon_fan",
    "pentagon_field",
    "pentagon",
    "double_winding",
    "hexagon_virtual",
    "hexagon_chamber",
    "nested_triangles",
    "unit_square",
    "square_with",
    "simplex_model",
    "doubled_square",
    "cp2_triangle",
    "blowup_polygon",
]


def blowup() -> VectorConfiguration:
    """Five rays of CP^1 x CP^1 blown up at one point, in the balanced-example order."""
    return VectorConfiguration(((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1)))


def blowup_extended() -> VectorConfiguration:
    """The blowup plus its two ghosts ``(1, -1)`` and ``(0, 0)``; ``h = 5``."""
    return balance_and_oddify(blowup())


def polygon_fan(n: int, k: int | None = None) -> Triangulation:
    """Consecutive pairs ``{i, i+1}`` of the first ``k`` of ``n`` indices, cyclically."""
    k = n if k is None else k
    return Triangulation(n, 2, frozenset(frozenset({i, (i + 1) % k}) for i in range(k)))


def pentagon_field() -> AlgebraicField:
    """``Q(sin 72°)``: ``x^4 - 5/4 x^2 + 5/16`` with the root in ``(9/10, 1)``."""
    return AlgebraicField([Fraction(5, 16), 0, Fraction(-5, 4), 0, 1], (Fraction(9, 10), 1))


def pentagon() -> VectorConfiguration:
    """The fifth roots of unity as vectors of ``R^2`` over ``Q(sin 72°)``."""
    K = pentagon_field()
    t = K.gen
    c1, s1 = 2 * t * t - Fraction(3, 2), t
    c2, s2 = 1 - 2 * t * t, 4 * t ** 3 - 3 * t
    return VectorConfiguration(((1, 0), (c1, s1), (c2, s2), (c2, -s2), (c1, -s1)))


def double_winding():
    """Six rays at 0, 135, 270, 45, 180, 315 degrees joined consecutively.

    Every wall is fine but the cones wind twice around the origin, so the
    proper-intersection check is the one that fails.
    """
    V = VectorConfiguration(((1, 0), (-1, 1), (0, -1), (1, 1), (-1, 0), (1, -1)))
    return V, polygon_fan(6)


_FAMILY_VIRTUAL = [[1, 3, 5], [2, 4, 6], [1, 3, 6], [2, 3, 5], [1, 4, 5], [1, 4, 6], [2, 3, 6], [2, 4, 5]]
_FAMILY_CHAMBER = [[1, 2, 4], [1, 3, 4], [1, 3, 5], [1, 3, 6], [2, 3, 5], [2, 3, 6], [2, 4, 5], [2, 4, 6]]


def hexagon_virtual() -> LVMBDatum:
    """Six points of ``C`` carrying the first six-point family: a virtual chamber with empty chamber."""
    points = PointConfiguration(((4, 5), (-2, 1), (5, -1), (1, 1), (-5, -6), (-2, 0)))
    return LVMBDatum(points, VirtualChamber.from_one_based(6, 1, _FAMILY_VIRTUAL))


def hexagon_chamber() -> LVMBDatum:
    """Six points of ``C`` carrying the second six-point family, which is a chamber."""
    points = PointConfiguration(((3, 2), (3, 0), (-4, -4), (-2, 0), (-3, 3), (5, 6)))
    return LVMBDatum(points, VirtualChamber.from_one_based(6, 1, _FAMILY_CHAMBER))


def nested_triangles():
    """Non-regular complete fan in ``R^3``.

    Two homothetic triangles at height 1 triangulated with a cyclic twist,
    closed off below by ``(0, 0, -6)``, which also balances the vectors.
    """
    a = [(0, 8, 1), (-8, -4, 1), (8, -4, 1)]
    b = [(0, 2, 1), (-2, -1, 1), (2, -1, 1)]
    V = VectorConfiguration(tuple(a + b + [(0, 0, -6)]))
    a1, a2, a3, b1, b2, b3, c = range(7)
    T = Triangulation(7, 3, frozenset(frozenset(s) for s in [
        (b1, b2, b3), (a1, a2, b1), (a2, b1, b2), (a2, a3, b2), (a3, b2, b3),
        (a3, a1, b3), (a1, b3, b1), (a1, a2, c), (a2, a3, c), (a3, a1, c),
    ]))
    return V, T


def unit_square() -> PolytopePresentation:
    return PolytopePresentation(((1, 0), (0, 1), (-1, 0), (0, -1)), (0, 0, -1, -1))


def square_with(normal, level) -> PolytopePresentation:
    """Unit square plus one extra half-space ``<mu, normal> >= level`` (index 5, a ghost)."""
    return PolytopePresentation(((1, 0), (0, 1), (-1, 0), (0, -1), tuple(normal)), (0, 0, -1, -1, level), h=4)


def simplex_model(d: int, r) -> PolytopePresentation:
    """Simplex with vertices ``0, r e_1, ..., r e_d``: ``mu_j >= 0`` and ``-sum(mu) >= -r``."""
    vecs = [tuple(int(i == j) for i in range(d)) for j in range(d)] + [tuple(-1 for _ in range(d))]
    levels = [0] * d + [-Fraction(r)]
    return PolytopePresentation(tuple(vecs), tuple(levels))


def doubled_square(with_ghosts: bool = False) -> PolytopePresentation:
    """Square with normals ``±2e_1, ±2e_2`` in ``Z^2``; ghosts ``e_1, e_2`` are strictly redundant."""
    from .configuration import quasilattice_info

    vecs = [(2, 0), (0, 2), (-2, 0), (0, -2)]
    levels = [0, 0, -2, -2]
    if with_ghosts:
        vecs += [(1, 0), (0, 1)]
        levels += [-1, -1]
    return PolytopePresentation(tuple(vecs), tuple(levels), h=4, quasilattice=quasilattice_info([(1, 0), (0, 1)]))


def cp2_triangle() -> PolytopePresentation:
    return PolytopePresentation(((1, 0), (0, 1), (-1, -1)), (0, 0, -1))


def blowup_polygon() -> PolytopePresentation:
    """Pentagon with vertices (0,0), (2,0), (3,1), (3,3), (0,3); its normal fan is the blowup fan."""
    return PolytopePresentation(((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1)), (0, 0, -2, -3, -3))
