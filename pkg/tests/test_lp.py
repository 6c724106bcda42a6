import random
from fractions import Fraction

import pytest

from lvmbkit.fixtures import pentagon_field
from lvmbkit.lp import Feasible, Infeasible, LinearSystem, lp_feasible, verify_certificate


def _tightest(rows):
    """Normalise each row and keep, per direction, only the tightest right-hand side."""
    best = {}
    for a, b, s in rows:
        if not any(a):
            best.setdefault(None, []).append((b, s))
            continue
        lead = next(abs(x) for x in a if x)
        a, b = tuple(x / lead for x in a), b / lead
        old = best.get(a)
        if old is None or b > old[0] or (b == old[0] and s and not old[1]):
            best[a] = (b, s)
    constants = best.pop(None, [])
    return constants, [(a, b, s) for a, (b, s) in best.items()]


def fourier_motzkin(num_vars, rows):
    """Feasibility of ``a.x >= b`` / ``a.x > b`` / ``a.x = b`` rows by variable elimination."""
    eqs = [(list(a), b) for a, rel, b in rows if rel == "="]
    ineqs = [(tuple(a), b, rel == ">") for a, rel, b in rows if rel != "="]
    # substitute equalities away first
    while eqs:
        a, b = eqs.pop()
        k = next((j for j, x in enumerate(a) if x), None)
        if k is None:
            if b != 0:
                return False
            continue
        piv = a[k]

        def sub(c, rhs):
            f = c[k] / piv
            return [x - f * y for x, y in zip(c, a)], rhs - f * b

        eqs = [sub(c, r) for c, r in eqs]
        ineqs = [(tuple(sub(list(c), r)[0]), sub(list(c), r)[1], st) for c, r, st in ineqs]
    remaining = set(range(num_vars))
    cur = ineqs
    while True:
        constants, live = _tightest(cur)
        if any((0 <= b) if s else (0 < b) for b, s in constants):
            return False
        if not live:
            return True
        k = min(remaining, key=lambda j: sum(r[0][j] > 0 for r in live) * sum(r[0][j] < 0 for r in live))
        remaining.discard(k)
        cur = [r for r in live if r[0][k] == 0]
        pos = [r for r in live if r[0][k] > 0]
        neg = [r for r in live if r[0][k] < 0]
        for ap, bp, sp in pos:
            for an, bn, sn in neg:
                fp, fn = 1 / ap[k], -1 / an[k]
                a = tuple(fp * x + fn * y for x, y in zip(ap, an))
                cur.append((a, fp * bp + fn * bn, sp or sn))


def _check(system):
    cert = lp_feasible(system)
    assert verify_certificate(system, cert)
    return cert


def test_open_interval():
    S = LinearSystem(1).add([1], ">", 0).add([1], "<", 1)
    cert = _check(S)
    assert isinstance(cert, Feasible)
    assert 0 < cert.witness[0] < 1
    assert cert.epsilon > 0


def test_empty_interval_has_farkas():
    S = LinearSystem(1).add([1], ">=", 0).add([1], "<=", -1)
    cert = _check(S)
    assert isinstance(cert, Infeasible)
    assert cert.farkas == (1, 1)


def test_strictness_forced_to_zero():
    S = LinearSystem(2).add([1, 1], "=", 1).add([1, 0], ">", 0).add([0, 1], ">", 0).add([1, -1], "=", 1)
    assert isinstance(_check(S), Infeasible)


def test_no_strict_rows_plain_phase_one():
    S = LinearSystem(2).add([1, 1], ">=", 2).add([1, -1], "=", 0)
    cert = _check(S)
    assert isinstance(cert, Feasible) and cert.epsilon is None


def test_tampered_certificates_fail():
    S = LinearSystem(1).add([1], ">", 0).add([1], "<", 1)
    assert not verify_certificate(S, Feasible((Fraction(2),), Fraction(1)))
    T = LinearSystem(1).add([1], ">=", 0).add([1], "<=", -1)
    assert not verify_certificate(T, Infeasible((Fraction(1), Fraction(0))))
    assert not verify_certificate(T, Infeasible((Fraction(-1), Fraction(-1))))


def test_algebraic_coefficients():
    K = pentagon_field()
    t = K.gen
    # t > 9/10 is known; x > t and x < 1 is feasible, x > t and x < 9/10 is not
    S = LinearSystem(1).add([1], ">", t).add([1], "<", 1)
    cert = _check(S)
    assert isinstance(cert, Feasible)
    T = LinearSystem(1).add([1], ">", t).add([1], "<", Fraction(9, 10))
    assert isinstance(_check(T), Infeasible)


def test_unknown_relation():
    with pytest.raises(ValueError):
        LinearSystem(1).add([1], "!=", 0)


def test_agrees_with_fourier_motzkin():
    rnd = random.Random(0x5EED)
    counts = {True: 0, False: 0}
    for _ in range(300):
        nv = rnd.randint(1, 4)
        S = LinearSystem(nv)
        rows = []
        for _ in range(rnd.randint(1, 10)):
            a = [Fraction(rnd.randint(-3, 3)) for _ in range(nv)]
            rel = rnd.choice([">=", ">=", ">", "="])
            b = Fraction(rnd.randint(-3, 3))
            S.add(a, rel, b)
            rows.append((a, rel, b))
        cert = _check(S)
        expected = fourier_motzkin(nv, rows)
        assert cert.feasible == expected
        counts[expected] += 1
    assert counts[True] > 30 and counts[False] > 30
