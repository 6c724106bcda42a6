"""Exact ordered-field scalars.

Rationals are plain :class:`fractions.Fraction` values.  Real algebraic
numbers live in a simple extension ``Q(theta)`` described by
:class:`AlgebraicField` (monic irreducible minimal polynomial plus a rational
interval isolating the real root ``theta``) and are represented by
:class:`FieldElement`, a coefficient vector in the power basis.

Every scalar supports ``+ - * /``, comparisons and an exact :func:`sign`.
"""
from __future__ import annotations

import threading
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence, Union

from .errors import DivisionByZero, FieldMismatch, InvalidField

Rational = Fraction
Scalar = Union[int, Fraction, "FieldElement"]

__all__ = [
    "Rational",
    "Scalar",
    "AlgebraicField",
    "FieldElement",
    "as_rational",
    "sign",
    "field_arith",
    "common_field",
    "coefficients",
    "is_rational_value",
    "to_float",
]


def as_rational(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, FieldElement) and x.is_rational():
        return x.to_rational()
    raise TypeError(f"cannot interpret {x!r} as a rational number")


# ---------------------------------------------------------------------------
# dense univariate polynomials over Q, coefficient lists in ascending order

def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _pdivmod(a: Sequence[Fraction], b: Sequence[Fraction]):
    a = list(a)
    b = _trim(list(b))
    if not b:
        raise DivisionByZero("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(_trim(a)) >= len(b):
        shift = len(a) - len(b)
        c = a[-1] / lead
        q[shift] = c
        for i, bi in enumerate(b):
            a[i + shift] -= c * bi
        a.pop()
    return _trim(q), a


def _pmul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _trim(out)


def _psub(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _pderiv(p):
    return _trim([i * c for i, c in enumerate(p)][1:])


def _peval(p, x):
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _pgcd(a, b):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        _, r = _pdivmod(a, b)
        a, b = b, r
    return a


def _pxgcd(a, b):
    """Return (g, s, t) with s*a + t*b = g."""
    r0, r1 = _trim(list(a)), _trim(list(b))
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while r1:
        q, r = _pdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _psub(s0, _pmul(q, s1))
        t0, t1 = t1, _psub(t0, _pmul(q, t1))
    return r0, s0, t0


def _sturm_chain(p):
    chain = [list(p), _pderiv(p)]
    while chain[-1]:
        _, r = _pdivmod(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-c for c in r])
    return chain


def _variations(chain, x) -> int:
    signs = [s for s in (_sgn(_peval(q, x)) for q in chain) if s]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def count_real_roots(p: Sequence[Fraction], lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots of ``p`` in the half-open interval (lo, hi]."""
    chain = _sturm_chain(_trim(list(p)))
    return _variations(chain, lo) - _variations(chain, hi)


def _is_irreducible(poly: Sequence[Fraction]) -> bool:
    import sympy

    x = sympy.Symbol("x")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x**i for i, c in enumerate(poly))
    return sympy.Poly(expr, x, domain="QQ").is_irreducible


class AlgebraicField:
    """The real field ``Q(theta)`` for a single real algebraic number ``theta``."""

    __slots__ = ("minpoly", "interval", "_lo", "_hi", "_lock")

    def __init__(self, minpoly: Iterable, interval: Sequence, check: bool = True):
        poly = _trim([as_rational(c) for c in minpoly])
        if len(poly) < 2:
            raise InvalidField("minimal polynomial must have degree >= 1")
        lead = poly[-1]
        poly = [c / lead for c in poly]
        lo, hi = (as_rational(v) for v in interval)
        if lo > hi:
            raise InvalidField("isolating interval is reversed")
        self.minpoly = tuple(poly)
        self.interval = (lo, hi)
        self._lock = threading.Lock()
        if len(poly) == 2:
            root = -poly[0]
            if not lo <= root <= hi:
                raise InvalidField("linear minimal polynomial has no root in the interval")
            self._lo = self._hi = root
            return
        if check:
            if _peval(poly, lo) == 0 or _peval(poly, hi) == 0:
                raise InvalidField("interval endpoints must not be roots")
            if len(_pgcd(poly, _pderiv(poly))) > 1:
                raise InvalidField("minimal polynomial is not square-free")
            if count_real_roots(poly, lo, hi) != 1:
                raise InvalidField("interval does not isolate exactly one real root")
            if not _is_irreducible(poly):
                raise InvalidField("minimal polynomial is reducible over Q")
        self._lo, self._hi = lo, hi

    @property
    def degree(self) -> int:
        return len(self.minpoly) - 1

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, AlgebraicField) or self.minpoly != other.minpoly:
            return False
        lo = max(self._lo, other._lo)
        hi = min(self._hi, other._hi)
        if lo > hi:
            return False
        if self.degree == 1:
            return True
        # same irreducible polynomial: same root iff the isolating intervals overlap on it
        return _peval(self.minpoly, lo) == 0 or count_real_roots(self.minpoly, lo, hi) == 1

    def __hash__(self):
        return hash(self.minpoly)

    def __repr__(self):
        return f"AlgebraicField(minpoly={[str(c) for c in self.minpoly]}, interval=({self.interval[0]}, {self.interval[1]}))"

    # -- elements ------------------------------------------------------------
    def element(self, coeffs: Iterable) -> "FieldElement":
        return FieldElement(self, coeffs)

    @property
    def gen(self) -> "FieldElement":
        if self.degree == 1:
            return FieldElement(self, [-self.minpoly[0]])
        return FieldElement(self, [0, 1])

    def reduce(self, poly: Sequence[Fraction]) -> tuple:
        """Canonical coefficient tuple of ``poly(theta)``."""
        poly = _trim(list(poly))
        if len(poly) > self.degree:
            _, poly = _pdivmod(poly, self.minpoly)
        poly = list(poly) + [Fraction(0)] * (self.degree - len(poly))
        return tuple(poly)

    # -- root isolation --------------------------------------------------------
    def root_interval(self) -> tuple:
        with self._lock:
            return self._lo, self._hi

    def _bisect(self, lo, hi):
        mid = (lo + hi) / 2
        s_mid = _sgn(_peval(self.minpoly, mid))
        if s_mid == 0:
            return mid, mid
        if _sgn(_peval(self.minpoly, lo)) * s_mid < 0:
            return lo, mid
        return mid, hi

    def refine(self, width: Fraction) -> tuple:
        """Shrink the cached isolating interval below ``width`` and return it."""
        with self._lock:
            lo, hi = self._lo, self._hi
            while hi - lo > width:
                lo, hi = self._bisect(lo, hi)
            self._lo, self._hi = lo, hi
            return lo, hi

    def sign_of(self, coeffs: Sequence[Fraction]) -> int:
        if not any(coeffs):
            return 0
        if len(coeffs) == 1 or not any(coeffs[1:]):
            return _sgn(coeffs[0])
        # nonzero element of a field defined by an irreducible polynomial: p(theta) != 0,
        # so refinement of theta terminates once the evaluation interval excludes zero
        with self._lock:
            lo, hi = self._lo, self._hi
            while True:
                if lo == hi:
                    return _sgn(_peval(coeffs, lo))
                elo, ehi = _interval_horner(coeffs, lo, hi)
                if elo > 0:
                    s = 1
                    break
                if ehi < 0:
                    s = -1
                    break
                lo, hi = self._bisect(lo, hi)
            self._lo, self._hi = lo, hi
            return s


def _interval_horner(coeffs, lo, hi):
    alo = ahi = Fraction(coeffs[-1])
    for c in reversed(coeffs[:-1]):
        prods = (alo * lo, alo * hi, ahi * lo, ahi * hi)
        alo, ahi = min(prods) + c, max(prods) + c
    return alo, ahi


class FieldElement:
    """An element ``sum c_k theta**k`` of an :class:`AlgebraicField`."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: AlgebraicField, coeffs: Iterable):
        self.field = field
        self.coeffs = field.reduce([as_rational(c) for c in coeffs])

    @classmethod
    def _raw(cls, field, coeffs):
        obj = object.__new__(cls)
        obj.field = field
        obj.coeffs = coeffs
        return obj

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatch("scalars from different algebraic fields")
            return other.coeffs
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return (Fraction(other),) + (Fraction(0),) * (self.field.degree - 1)
        return None

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is irrational")
        return self.coeffs[0]

    # arithmetic ---------------------------------------------------------------
    def __add__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return FieldElement._raw(self.field, tuple(a + b for a, b in zip(self.coeffs, c)))

    __radd__ = __add__

    def __sub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return FieldElement._raw(self.field, tuple(a - b for a, b in zip(self.coeffs, c)))

    def __rsub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return FieldElement._raw(self.field, tuple(b - a for a, b in zip(self.coeffs, c)))

    def __neg__(self):
        return FieldElement._raw(self.field, tuple(-a for a in self.coeffs))

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return FieldElement._raw(self.field, tuple(a * other for a in self.coeffs))
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return FieldElement._raw(self.field, self.field.reduce(_pmul(list(self.coeffs), list(c))))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if not any(self.coeffs):
            raise DivisionByZero("division by zero in algebraic field")
        g, s, _ = _pxgcd(list(self.coeffs), list(self.field.minpoly))
        # irreducible modulus: g is a nonzero constant
        if len(g) != 1:
            raise DivisionByZero("element is a zero divisor; minimal polynomial reducible")
        return FieldElement._raw(self.field, self.field.reduce([c / g[0] for c in s]))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if other == 0:
                raise DivisionByZero("division by zero")
            return FieldElement._raw(self.field, tuple(a / other for a in self.coeffs))
        if isinstance(other, FieldElement):
            self._coerce(other)
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return FieldElement._raw(self.field, c) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = FieldElement._raw(self.field, self.field.reduce([Fraction(1)]))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # comparison -----------------------------------------------------------------
    def __eq__(self, other):
        try:
            c = self._coerce(other)
        except FieldMismatch:
            return False
        if c is None:
            return NotImplemented
        return self.coeffs == tuple(c)

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.field, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def sign(self) -> int:
        return self.field.sign_of(self.coeffs)

    def _cmp(self, other) -> int:
        diff = self - other
        if diff is NotImplemented:
            raise TypeError(f"cannot compare FieldElement with {type(other).__name__}")
        return diff.sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __float__(self):
        return float(self.approx(Fraction(1, 10**20)))

    def approx(self, width: Fraction) -> Fraction:
        """Rational approximation within ``width`` of the true value (for display only)."""
        if self.is_rational():
            return self.coeffs[0]
        lo, hi = self.field.root_interval()
        while True:
            elo, ehi = _interval_horner(list(self.coeffs), lo, hi)
            if ehi - elo <= width:
                return (elo + ehi) / 2
            lo, hi = self.field.refine((hi - lo) / 2)

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(str(c) if k == 0 else f"{c}*t^{k}" if k > 1 else f"{c}*t")
        return "FieldElement(" + (" + ".join(terms) or "0") + ")"


def sign(x: Scalar) -> int:
    """Exact sign of a scalar: -1, 0 or +1."""
    if isinstance(x, FieldElement):
        return x.sign()
    return _sgn(x)


def field_arith(x: Scalar, y: Scalar, op: str) -> Scalar:
    if op == "+":
        return x + y
    if op in ("-", "−"):
        return x - y
    if op in ("*", "×"):
        return x * y
    if op in ("/", "÷"):
        if sign(y) == 0:
            raise DivisionByZero("division by zero")
        if isinstance(x, int) and isinstance(y, int):
            return Fraction(x, y)
        return x / y
    raise ValueError(f"unknown operation {op!r}")


def common_field(values: Iterable) -> AlgebraicField | None:
    """The single algebraic field shared by ``values`` (None when all are rational)."""
    field = None
    for v in values:
        if isinstance(v, FieldElement):
            if field is None:
                field = v.field
            elif v.field is not field and v.field != field:
                raise FieldMismatch("scalars from different algebraic fields")
    return field


def coefficients(x: Scalar, field: AlgebraicField | None) -> tuple:
    """Rational coordinates of ``x`` in the power basis of ``field``."""
    if field is None:
        return (as_rational(x),)
    if isinstance(x, FieldElement):
        return x.coeffs
    return (as_rational(x),) + (Fraction(0),) * (field.degree - 1)


def is_rational_value(x: Scalar) -> bool:
    return not isinstance(x, FieldElement) or x.is_rational()


def to_float(x: Scalar) -> float:
    return float(x)
