import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lvmbkit.errors import DivisionByZero, FieldMismatch, InvalidField
from lvmbkit.field import AlgebraicField, FieldElement, field_arith, sign
from lvmbkit.fixtures import pentagon_field

SQRT5 = AlgebraicField([-5, 0, 1], (2, 3))
CUBIC = AlgebraicField([-2, 0, 0, 1], (1, 2))  # real cube root of 2


def _theta_mp(K, dps=80):
    """High-precision root of the minimal polynomial inside its interval."""
    with mpmath.workdps(dps):
        lo, hi = (mpmath.mpf(x.numerator) / x.denominator for x in K.interval)
        coeffs = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(K.minpoly)]
        roots = mpmath.polyroots(coeffs, maxsteps=200, extraprec=4 * dps)
        (theta,) = [r.real for r in roots if abs(r.imag) < mpmath.mpf(10) ** -40 and lo < r.real < hi]
        return theta


def _value_mp(x, theta, dps=80):
    with mpmath.workdps(dps):
        return sum(mpmath.mpf(c.numerator) / c.denominator * theta ** k for k, c in enumerate(x.coeffs))


rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def elements(K):
    return st.lists(rationals, min_size=K.degree, max_size=K.degree).map(lambda cs: FieldElement(K, cs))


def test_rational_signs():
    assert sign(Fraction(3, 7)) == 1
    assert sign(Fraction(0)) == 0
    assert sign(Fraction(-1, 9)) == -1


def test_sqrt5_against_nine_quarters():
    # bisection oracle on x^2 - 5: (9/4)^2 = 81/16 > 5, so sqrt(5) < 9/4
    lo, hi = Fraction(2), Fraction(3)
    for _ in range(40):
        mid = (lo + hi) / 2
        lo, hi = (mid, hi) if mid * mid < 5 else (lo, mid)
    assert hi < Fraction(9, 4)
    t = SQRT5.gen
    assert sign(t - Fraction(9, 4)) == -1
    assert sign(t - Fraction(11, 5)) == 1


def test_arithmetic_examples():
    assert field_arith(Fraction(1, 2), Fraction(1, 3), "+") == Fraction(5, 6)
    t = SQRT5.gen
    assert t * t == 5
    inv = 1 / (1 + t)
    assert inv == FieldElement(SQRT5, [Fraction(-1, 4), Fraction(1, 4)])
    assert inv * (1 + t) == 1


def test_division_by_zero_and_mismatch():
    with pytest.raises(DivisionByZero):
        SQRT5.gen / FieldElement(SQRT5, [0, 0])
    with pytest.raises(FieldMismatch):
        SQRT5.gen + CUBIC.gen
    with pytest.raises(DivisionByZero):
        field_arith(Fraction(1), Fraction(0), "/")


def test_invalid_fields():
    with pytest.raises(InvalidField):
        AlgebraicField([-4, 0, 1], (1, 3))  # x^2 - 4 is reducible
    with pytest.raises(InvalidField):
        AlgebraicField([-5, 0, 1], (-3, 3))  # two roots inside
    with pytest.raises(InvalidField):
        AlgebraicField([-5, 0, 1], (3, 4))  # no root inside


@settings(max_examples=150, deadline=None)
@given(elements(CUBIC), elements(CUBIC), elements(CUBIC))
def test_field_axioms_cubic(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    if x:
        assert x * x.inverse() == 1
        assert (y / x) * x == y


@settings(max_examples=100, deadline=None)
@given(elements(pentagon_field()), elements(pentagon_field()))
def test_sign_multiplicative(x, y):
    assert sign(x * y) == sign(x) * sign(y)
    assert sign(-x) == -sign(x)
    assert (x == y) == (x.coeffs == y.coeffs)


@pytest.mark.parametrize("K", [SQRT5, CUBIC, pentagon_field()], ids=["sqrt5", "cbrt2", "sin72"])
def test_sign_matches_high_precision(K):
    rnd = random.Random(0x5EED)
    theta = _theta_mp(K)
    for _ in range(1000 // 3 + 1):
        a = FieldElement(K, [Fraction(rnd.randint(-50, 50), rnd.randint(1, 9)) for _ in range(K.degree)])
        b = FieldElement(K, [Fraction(rnd.randint(-50, 50), rnd.randint(1, 9)) for _ in range(K.degree)])
        s = a + b
        value = _value_mp(s, theta)
        if s:
            assert abs(value) > mpmath.mpf(10) ** -60
            assert sign(s) == (1 if value > 0 else -1)
        else:
            assert sign(s) == 0


def test_sign_near_cancellation():
    # 70/99 approximates 1/sqrt(2) closely; the sign must still be exact
    K = AlgebraicField([-2, 0, 1], (1, 2))
    t = K.gen
    assert sign(t / 2 - Fraction(70, 99)) == 1
    assert sign(t / 2 - Fraction(99, 140)) == -1


def test_concurrent_signs_match_sequential():
    from concurrent.futures import ThreadPoolExecutor

    K = pentagon_field()
    rnd = random.Random(7)
    xs = [FieldElement(K, [Fraction(rnd.randint(-9, 9), rnd.randint(1, 5)) for _ in range(4)]) for _ in range(60)]
    seq = [sign(x) for x in xs]
    fresh = pentagon_field()
    ys = [FieldElement(fresh, x.coeffs) for x in xs]
    with ThreadPoolExecutor(8) as pool:
        par = list(pool.map(sign, ys))
    assert par == seq
