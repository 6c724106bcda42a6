import itertools
import random

import pytest
from _instances import fan_chamber_instance

from lvmbkit.configuration import PointConfiguration, gale_dual
from lvmbkit.errors import CardinalityMismatch, NotABasis, NotAVirtualChamber, TorusCase, WrongCardinality
from lvmbkit.fan import Triangulation, validate_fan
from lvmbkit.fixtures import blowup, blowup_extended, hexagon_chamber, hexagon_virtual, pentagon, polygon_fan
from lvmbkit.lp import verify_certificate
from lvmbkit.lvmb import (
    LVMBDatum,
    VirtualChamber,
    bosio_i,
    bosio_ii,
    bosio_ii_violations,
    complements,
    complements_inv,
    datum_from_fan,
    dual_data,
    is_basis,
    is_chamber,
    is_virtual_chamber,
    manifold_report,
    open_simplex_contains,
)

FAMILY = [[1, 3, 5], [2, 4, 6], [1, 3, 6], [2, 3, 5], [1, 4, 5], [1, 4, 6], [2, 3, 6], [2, 4, 5]]


def exchange_violations(n, bases):
    """Brute force: every (tau, i) such that no swap of i for an element of tau lands in the family."""
    fam = {frozenset(b) for b in bases}
    out = []
    for tau in sorted(tuple(sorted(b)) for b in fam):
        for i in range(1, n + 1):
            if i in tau:
                continue
            swaps = [frozenset(set(tau) - {j} | {i}) for j in tau]
            if not any(s in fam for s in swaps):
                out.append((tau, i))
    return out


def test_is_basis():
    P = PointConfiguration(((0, 0), (1, 0), (0, 1), (2, 0)))
    assert is_basis([0, 1, 2], P)
    assert not is_basis([0, 1, 3], P)
    with pytest.raises(WrongCardinality):
        is_basis([0, 1], P)
    H = hexagon_virtual().points
    assert is_basis([0, 2, 4], H)
    assert all(is_basis(t, H) for t in itertools.combinations(range(6), 3))


def test_bosio_ii_family():
    ch = VirtualChamber.from_one_based(6, 1, FAMILY)
    assert bosio_ii(ch) is None
    assert exchange_violations(6, FAMILY) == []


def test_bosio_ii_family_minus_245():
    fam = [b for b in FAMILY if b != [2, 4, 5]]
    ch = VirtualChamber.from_one_based(6, 1, fam)
    expected = exchange_violations(6, fam)
    found = [(tuple(i + 1 for i in t), i + 1) for t, i in bosio_ii_violations(ch)]
    assert found == expected
    assert ((2, 4, 6), 5) in found
    tau, i = bosio_ii(ch)
    assert (tuple(j + 1 for j in tau), i + 1) == expected[0] == ((1, 4, 5), 2)


def test_bosio_i_disjoint_triangles():
    P = PointConfiguration(((0, 0), (1, 0), (0, 1), (5, 5), (6, 5), (5, 6)))
    datum = LVMBDatum(P, VirtualChamber.from_one_based(6, 1, [[1, 2, 3], [4, 5, 6]]))
    cert = bosio_i(datum)
    assert not cert.ok
    assert cert.failing_pair == ((0, 1, 2), (3, 4, 5))
    assert cert.verify()
    (_, last), = cert.lp[-1:]
    assert not last.feasible


def test_hexagon_virtual_chamber():
    datum = hexagon_virtual()
    assert is_virtual_chamber(datum)
    system, cert = is_chamber(datum)
    assert not cert.feasible and verify_certificate(system, cert)


def test_hexagon_chamber():
    datum = hexagon_chamber()
    assert is_virtual_chamber(datum)
    system, cert = is_chamber(datum)
    assert cert.feasible and verify_certificate(system, cert)
    nu = cert.witness[: 2 * datum.m]
    assert all(open_simplex_contains(datum.points, b, nu) for b in datum.chamber.bases)


def test_single_basis_torus_case():
    P = PointConfiguration(((0, 0), (1, 0), (0, 1)))
    datum = LVMBDatum(P, VirtualChamber.from_one_based(3, 1, [[1, 2, 3]]))
    system, cert = is_chamber(datum)
    assert cert.feasible
    rep = manifold_report(datum)
    assert rep.is_torus_case and rep.kaehler == "TorusCase" and rep.complex_dim == 1
    with pytest.raises(TorusCase):
        complements_inv(datum.chamber, 3, 0)


def test_datum_validation():
    P = PointConfiguration(((0, 0), (1, 0), (2, 0), (0, 1)))
    with pytest.raises(NotABasis):
        LVMBDatum(P, VirtualChamber.from_one_based(4, 1, [[1, 2, 3]]))
    with pytest.raises(CardinalityMismatch):
        LVMBDatum(P, VirtualChamber.from_one_based(5, 1, [[1, 2, 4]]))
    assert not is_virtual_chamber(P, VirtualChamber.from_one_based(4, 1, [[1, 2, 3]]))


def test_complements_extended_example():
    T = Triangulation.from_one_based(7, 2, [[1, 2], [2, 3], [3, 4], [4, 5], [5, 1]])
    ch = complements(T)
    assert ch.one_based() == sorted([[3, 4, 5, 6, 7], [1, 4, 5, 6, 7], [1, 2, 5, 6, 7], [1, 2, 3, 6, 7], [2, 3, 4, 6, 7]])
    assert ch.indispensable_indices == T.ghost_indices == frozenset({5, 6})
    assert complements_inv(ch, 7, 2) == T
    with pytest.raises(CardinalityMismatch):
        complements(Triangulation.from_one_based(6, 2, [[1, 2]]))


def test_complements_involution_random():
    rng = random.Random(11)
    for _ in range(50):
        d = rng.randint(1, 4)
        m = rng.randint(0, 2)
        n = d + 2 * m + 1
        T = Triangulation(n, d, frozenset(frozenset(rng.sample(range(n), d)) for _ in range(rng.randint(1, 6))))
        ch = complements(T)
        assert complements_inv(ch, n, d) == T
        assert ch.indispensable_indices == T.ghost_indices


def test_manifold_reports():
    rep = manifold_report(datum_from_fan(blowup(), polygon_fan(5)))
    assert rep.complex_dim == 4 and rep.n == 7 and rep.m == 2
    assert rep.rationality == (5, 5) and rep.rational
    assert (rep.leaf_type.torus_rank, rep.leaf_type.euclidean_rank) == (4, 0)
    rep = manifold_report(datum_from_fan(pentagon(), polygon_fan(5)))
    assert rep.complex_dim == 3 and rep.rationality == (1, 5) and not rep.rational
    assert rep.kaehler == "No"


def test_manifold_report_rejects_non_chamber():
    P = PointConfiguration(((0, 0), (1, 0), (0, 1), (5, 5), (6, 5), (5, 6)))
    datum = LVMBDatum(P, VirtualChamber.from_one_based(6, 1, [[1, 2, 3], [4, 5, 6]]))
    with pytest.raises(NotAVirtualChamber):
        manifold_report(datum)


def test_common_point_implies_pairwise_condition(rng):
    seen = 0
    for _ in range(40):
        V, T = fan_chamber_instance(rng)
        _, _, points, chamber = dual_data(V, T)
        if not all(is_basis(b, points) for b in chamber.bases):
            continue
        datum = LVMBDatum(points, chamber)
        _, cert = is_chamber(datum)
        if cert.feasible:
            seen += 1
            # a common interior point settles the pairwise condition; exchange is separate
            assert bosio_i(datum).ok
            if len(datum.chamber) == 1 and datum.n > 2 * datum.m + 1:
                assert bosio_ii(datum.chamber) is not None
    assert seen > 5


def test_complex_dim_equals_d_plus_m():
    V = blowup_extended()
    datum = LVMBDatum(gale_dual(V), complements(polygon_fan(7, 5)))
    assert manifold_report(datum).complex_dim == V.d + datum.m
