import itertools
from math import comb

import pytest

from lvmbkit.configuration import VectorConfiguration, balance_and_oddify
from lvmbkit.errors import CapExceeded, NotValidated
from lvmbkit.fan import (
    Triangulation,
    betti_numbers,
    covering_probe,
    fvector,
    hvector,
    is_shelling,
    reindex_ghosts_last,
    shelling_h_vector,
    shelling_order,
    validate_fan,
    verify_failure,
)
from lvmbkit.fixtures import blowup, blowup_extended, double_winding, nested_triangles, pentagon, polygon_fan

CYCLE5 = [[1, 2], [2, 3], [3, 4], [4, 5], [5, 1]]


def brute_faces(T):
    """Face counts straight from the definition: all subsets of all simplices."""
    faces = set()
    for s in T.simplices:
        for k in range(len(s) + 1):
            faces.update(frozenset(c) for c in itertools.combinations(sorted(s), k))
    return tuple(sum(1 for f in faces if len(f) == k) for k in range(T.d + 1))


def test_blowup_fan_is_complete():
    cert = validate_fan(blowup(), Triangulation.from_one_based(5, 2, CYCLE5))
    assert cert.ok and cert.status == "CompleteSimplicialFan"
    assert verify_failure(blowup(), Triangulation.from_one_based(5, 2, CYCLE5), cert)


def test_missing_simplex_fails_at_wall():
    T = Triangulation.from_one_based(5, 2, CYCLE5[:-1])
    cert = validate_fan(blowup(), T)
    assert not cert.ok and cert.check == "wall"
    assert set(cert.witness["wall"]) in ({0}, {4})
    assert verify_failure(blowup(), T, cert)


def test_overlapping_cones_fail():
    V = VectorConfiguration(((1, 0), (0, 1), (1, 1)))
    T = Triangulation.from_one_based(3, 2, [[1, 2], [1, 3]])
    cert = validate_fan(V, T)
    assert not cert.ok
    assert verify_failure(V, T, cert)


def test_double_winding_fails_at_intersection():
    V, T = double_winding()
    cert = validate_fan(V, T)
    assert not cert.ok and cert.check == "intersection"
    assert verify_failure(V, T, cert)
    # the witness point lies in both cones with exact coordinates
    w = cert.witness
    assert all(x >= 0 for x in w["sigma_coords"]) and all(x >= 0 for x in w["tau_coords"])


def test_dependent_simplex():
    V = VectorConfiguration(((1, 0), (2, 0), (0, 1), (-1, -1)))
    T = Triangulation.from_one_based(4, 2, [[1, 2], [2, 3], [3, 4], [4, 1]])
    cert = validate_fan(V, T)
    assert not cert.ok and cert.check == "independence"
    assert verify_failure(V, T, cert)


def test_unused_ray_fails():
    V = VectorConfiguration(((1, 0), (0, 1), (-1, 0), (0, -1), (1, 1)))
    T = Triangulation.from_one_based(5, 2, [[1, 2], [2, 3], [3, 4], [4, 1]])
    cert = validate_fan(V, T)
    assert not cert.ok and cert.check == "rays"
    assert validate_fan(V.with_h(4), T).ok


def test_tampered_witness_rejected():
    V, T = double_winding()
    cert = validate_fan(V, T)
    bad = dict(cert.witness)
    bad["point"] = tuple(x + 1 for x in bad["point"])
    forged = type(cert)(cert.status, cert.check, bad, cert.lp_certificates)
    assert not verify_failure(V, T, forged)


def test_covering_probe_deterministic():
    T = Triangulation.from_one_based(5, 2, CYCLE5)
    assert covering_probe(blowup(), T) == covering_probe(blowup(), T)
    assert covering_probe(blowup(), T) is None
    V, W = double_winding()
    assert covering_probe(V, W) is not None


def test_face_counts_pentagon():
    T = polygon_fan(5)
    assert validate_fan(pentagon(), T).ok
    assert fvector(T) == (1, 5, 5) == brute_faces(T)
    assert hvector(T) == (1, 3, 1)
    rep = betti_numbers(pentagon(), T)
    assert rep.betti == (1, 0, 3, 0, 1) and rep.euler_characteristic == 5
    assert rep.h_vector_valid == "certified"


def test_cp1():
    V = VectorConfiguration(((1,), (-1,)))
    T = Triangulation.from_one_based(2, 1, [[1], [2]])
    assert validate_fan(V, T).ok
    assert fvector(T) == (1, 2) and hvector(T) == (1, 1)
    assert betti_numbers(V, T).betti == (1, 0, 1)
    assert shelling_order(T) is not None


def test_ghosts_do_not_change_betti():
    T5 = polygon_fan(5)
    T7 = polygon_fan(7, 5)
    assert validate_fan(blowup_extended(), T7).ok
    assert T7.ghost_indices == frozenset({5, 6})
    assert betti_numbers(blowup(), T5).betti == betti_numbers(blowup_extended(), T7).betti == (1, 0, 3, 0, 1)
    assert hvector(T5) == hvector(T7)


def test_betti_requires_validation():
    with pytest.raises(NotValidated):
        betti_numbers(*double_winding())


def test_shelling_matches_bruteforce():
    T = polygon_fan(5)
    order = shelling_order(T)
    assert is_shelling(T, order)
    shellings = [p for p in itertools.permutations(T.sorted_simplices()) if is_shelling(T, p)]
    assert shellings and tuple(order) in set(shellings)
    # the h-vector read off any shelling agrees with the face-count formula
    assert {shelling_h_vector(p, 2) for p in shellings} == {hvector(T)}


def test_shelling_nested_triangles():
    V, T = nested_triangles()
    order = shelling_order(T)
    assert order is not None and is_shelling(T, order)
    assert shelling_h_vector(order, 3) == hvector(T) == (1, 4, 4, 1)


def test_shelling_cap():
    with pytest.raises(CapExceeded):
        shelling_order(polygon_fan(20))


@pytest.mark.parametrize("name", ["blowup", "pentagon", "nested", "ghosts"])
def test_dehn_sommerville(name):
    V, T = {
        "blowup": (blowup(), polygon_fan(5)),
        "pentagon": (pentagon(), polygon_fan(5)),
        "nested": nested_triangles(),
        "ghosts": (blowup_extended(), polygon_fan(7, 5)),
    }[name]
    assert validate_fan(V, T).ok
    h = hvector(T)
    assert h == tuple(reversed(h))
    assert sum(h) == len(T)
    f = fvector(T)
    assert f == brute_faces(T)
    d = T.d
    for k in range(d + 1):
        assert h[k] == sum((-1) ** (k - i) * comb(d - i, k - i) * f[i] for i in range(k + 1))


def test_reindex_ghosts_last():
    V = VectorConfiguration(((0, 0), (1, 0), (0, 1), (-1, -1)))
    T = Triangulation.from_one_based(4, 2, [[2, 3], [3, 4], [4, 2]])
    V2, T2, perm = reindex_ghosts_last(V, T)
    assert T2.ghost_indices == frozenset({3})
    assert V2.vectors[3] == (0, 0)
    assert validate_fan(V2.with_h(3), T2).ok
    assert sorted(perm) == [0, 1, 2, 3]


def test_balance_then_validate_random(rng):
    # betti numbers are unchanged by appending ghosts through balance_and_oddify
    from lvmbkit.delzant import PolytopePresentation, normal_fan

    for _ in range(10):
        k = rng.randint(3, 7)
        import math

        angles = sorted(rng.sample(range(360), k))
        if max(b - a for a, b in zip(angles, angles[1:] + [angles[0] + 360])) >= 180:
            continue
        vecs = tuple((round(100 * math.cos(math.radians(a))), round(100 * math.sin(math.radians(a)))) for a in angles)
        P = PolytopePresentation(vecs, tuple(-1 for _ in vecs))
        V, T = normal_fan(P)
        W = balance_and_oddify(V)
        TW = Triangulation(W.n, 2, T.simplices)
        assert validate_fan(V, T).ok and validate_fan(W, TW).ok
        assert betti_numbers(V, T).betti == betti_numbers(W, TW).betti
