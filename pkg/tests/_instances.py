"""Seeded generators of random configurations and candidate simplex families."""
import itertools
import random
from fractions import Fraction

from lvmbkit.configuration import VectorConfiguration
from lvmbkit.errors import DegenerateConfiguration
from lvmbkit.fan import Triangulation
from lvmbkit.linalg import det, solve


def balanced_odd(rng: random.Random, d: int, n: int, spread: int = 5, zeros: bool = True):
    """Random rational balanced configuration with ``n - d`` odd, or None if it does not span."""
    assert (n - d) % 2 == 1
    vecs = []
    k = n - 1
    if zeros and n > d + 2 and rng.random() < 0.2:
        vecs.append(tuple(0 for _ in range(d)))
        k -= 1
    for _ in range(k):
        vecs.append(tuple(Fraction(rng.randint(-spread, spread), rng.choice([1, 1, 2])) for _ in range(d)))
    vecs.append(tuple(-sum(v[i] for v in vecs) for i in range(d)))
    rng.shuffle(vecs)
    try:
        return VectorConfiguration(tuple(vecs))
    except DegenerateConfiguration:
        return None


def hull_family(V: VectorConfiguration) -> set:
    """d-subsets whose vectors span a hyperplane with every other nonzero vector strictly on the origin's side."""
    d = V.d
    nonzero = [i for i, v in enumerate(V.vectors) if any(v)]
    out = set()
    for s in itertools.combinations(nonzero, d):
        M = [list(V.vectors[i]) for i in s]
        if det(M) == 0:
            continue
        # normal functional u with <u, v_i> = 1 on s
        u = solve(M, [1] * d)
        if u is None:
            continue
        if all(sum(a * b for a, b in zip(u, V.vectors[j])) < 1 for j in nonzero if j not in s):
            out.add(frozenset(s))
    return out


def flip(rng: random.Random, family: set, d: int) -> set:
    """Replace two simplices sharing a wall by the two through the opposite apexes."""
    fam = list(family)
    rng.shuffle(fam)
    for a, b in itertools.combinations(fam, 2):
        wall = a & b
        if len(wall) != d - 1 or d < 2:
            continue
        (x,), (y,) = a - wall, b - wall
        new = set(family) - {a, b}
        for w in wall:
            new.add((wall - {w}) | {x, y})
        return new
    return set(family)


def candidate_family(rng: random.Random, V: VectorConfiguration) -> set:
    d, n = V.d, V.n
    base = hull_family(V)
    roll = rng.random()
    if d == 2 and roll > 0.9:
        star = star_family(V)
        if star:
            return star
    if not base or roll < 0.15:
        k = rng.randint(1, 2 * n)
        return {frozenset(rng.sample(range(n), d)) for _ in range(k)}
    if roll < 0.55:
        return base
    fam = set(base)
    action = rng.choice(["drop", "add", "swap", "flip", "flip"])
    if action == "drop" and len(fam) > 1:
        fam.discard(rng.choice(sorted(fam, key=sorted)))
    elif action == "add":
        fam.add(frozenset(rng.sample(range(n), d)))
    elif action == "swap":
        fam.discard(rng.choice(sorted(fam, key=sorted)))
        fam.add(frozenset(rng.sample(range(n), d)))
    else:
        fam = flip(rng, fam, d)
    return fam


def star_family(V: VectorConfiguration) -> set:
    """d = 2: join each nonzero vector to the one two steps further in angular order.

    With an odd number of directions every wall has two cofaces, but the cones
    wind twice around the origin.
    """
    import math

    nz = [i for i, v in enumerate(V.vectors) if any(v)]
    nz.sort(key=lambda i: math.atan2(float(V.vectors[i][1]), float(V.vectors[i][0])))
    k = len(nz)
    if k % 2 == 0 or k < 5:
        return set()
    return {frozenset({nz[j], nz[(j + 2) % k]}) for j in range(k)}


def fan_chamber_instance(rng: random.Random):
    """A balanced odd rational V (n <= 8, d <= 3) with a random candidate triangulation."""
    while True:
        d = rng.choice([1, 2, 2, 3, 3])
        n = rng.choice([k for k in range(d + 1, 9) if (k - d) % 2 == 1])
        V = balanced_odd(rng, d, n)
        if V is None:
            continue
        fam = candidate_family(rng, V)
        if not fam:
            continue
        return V, Triangulation(n, d, frozenset(fam))


def twisted_prism(rng: random.Random):
    """Outer and inner triangles at height 1 joined with a cyclic twist, closed by a bottom ray.

    Regular or not depending on the twist and the scaling.
    """
    import math

    ang = [90 + 120 * k + rng.randint(-20, 20) for k in range(3)]
    R = rng.randint(6, 10)
    r = rng.randint(1, 4)
    pattern = rng.random() < 0.5
    if rng.random() < 0.5:
        # small rotations against the twist are where non-regular fans live
        rot = (-1 if pattern else 1) * rng.randint(0, 12)
    else:
        rot = rng.randint(-60, 60)
    a = [(round(R * math.cos(math.radians(t))), round(R * math.sin(math.radians(t))), 1) for t in ang]
    b = [(round(r * math.cos(math.radians(t + rot))), round(r * math.sin(math.radians(t + rot))), 1) for t in ang]
    c = (Fraction(-sum(p[0] for p in a + b)), Fraction(-sum(p[1] for p in a + b)), Fraction(-6))
    try:
        V = VectorConfiguration(tuple(a + b + [c]))
    except DegenerateConfiguration:
        return None
    a1, a2, a3, b1, b2, b3, cc = range(7)
    if pattern:
        sides = [(a1, a2, b1), (a2, b1, b2), (a2, a3, b2), (a3, b2, b3), (a3, a1, b3), (a1, b3, b1)]
    else:
        sides = [(a1, a2, b2), (a1, b1, b2), (a2, a3, b3), (a2, b2, b3), (a3, a1, b1), (a3, b3, b1)]
    simplices = [(b1, b2, b3)] + sides + [(a1, a2, cc), (a2, a3, cc), (a3, a1, cc)]
    return V, Triangulation(7, 3, frozenset(frozenset(s) for s in simplices))

