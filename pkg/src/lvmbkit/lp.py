"""Exact LP feasibility with strict inequalities.

A :class:`LinearSystem` mixes ``>=``, ``>`` and ``=`` rows over free
variables (``<=`` and ``<`` are accepted and negated on the way in).
:func:`lp_feasible` answers with a :class:`Feasible` witness or an
:class:`Infeasible` Farkas/Motzkin certificate; both re-verify exactly with
:func:`verify_certificate`.

Strict rows share one slack: maximise ``eps`` subject to
``<a, x> >= b + eps`` and ``eps <= 1``; the system is feasible iff the
optimum is positive.  The simplex uses Bland's rule throughout.
"""
from __future__ import annotations

import threading
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .field import FieldElement, Scalar

try:
    from gmpy2 import mpq as _mpq
except ImportError:  # pragma: no cover
    _mpq = None

__all__ = [
    "Constraint",
    "LinearSystem",
    "Feasible",
    "Infeasible",
    "lp_feasible",
    "verify_certificate",
    "recording",
]

_recorders: list = []
_recorders_lock = threading.Lock()


@contextmanager
def recording():
    """Collect ``(system, certificate)`` for every :func:`lp_feasible` answer inside the block."""
    log: list = []
    with _recorders_lock:
        _recorders.append(log)
    try:
        yield log
    finally:
        with _recorders_lock:
            _recorders.remove(log)


def _record(system, cert):
    if _recorders:
        snapshot = LinearSystem(system.num_vars)
        snapshot.constraints = list(system.constraints)
        system = snapshot
        with _recorders_lock:
            for log in _recorders:
                log.append((system, cert))
    return cert

@dataclass(frozen=True)
class Constraint:
    coeffs: tuple
    relation: str  # one of ">=", ">", "="
    rhs: Scalar


def _exact(x):
    return Fraction(x) if isinstance(x, (int, str)) else x


def _normalize(coeffs, relation, rhs) -> Constraint:
    coeffs = tuple(_exact(c) for c in coeffs)
    rhs = _exact(rhs)
    if relation in ("<=", "≤"):
        return Constraint(tuple(-c for c in coeffs), ">=", -rhs)
    if relation == "<":
        return Constraint(tuple(-c for c in coeffs), ">", -rhs)
    if relation in (">=", "≥"):
        return Constraint(coeffs, ">=", rhs)
    if relation in (">", "="):
        return Constraint(coeffs, relation, rhs)
    raise ValueError(f"unknown relation {relation!r}")


class LinearSystem:
    """Linear constraints over ``num_vars`` free variables."""

    def __init__(self, num_vars: int, constraints: Sequence = ()):
        self.num_vars = num_vars
        self.constraints: list[Constraint] = []
        for c in constraints:
            if isinstance(c, Constraint):
                self.add(c.coeffs, c.relation, c.rhs)
            else:
                self.add(*c)

    def add(self, coeffs, relation: str, rhs=0) -> "LinearSystem":
        if len(coeffs) != self.num_vars:
            raise ValueError(f"expected {self.num_vars} coefficients, got {len(coeffs)}")
        self.constraints.append(_normalize(coeffs, relation, rhs))
        return self

    def __len__(self):
        return len(self.constraints)

    @property
    def has_strict(self) -> bool:
        return any(c.relation == ">" for c in self.constraints)

    def __repr__(self):
        return f"LinearSystem(num_vars={self.num_vars}, constraints={len(self.constraints)})"


@dataclass(frozen=True)
class Feasible:
    witness: tuple
    epsilon: Scalar | None = None

    feasible = True


@dataclass(frozen=True)
class Infeasible:
    """Multipliers ``y`` (one per normalised row, ``>=0`` on inequality rows)
    with ``sum y_i a_i = 0`` and either ``sum y_i b_i > 0`` or
    ``sum y_i b_i = 0`` with a positive multiplier on a strict row."""

    farkas: tuple

    feasible = False


def verify_certificate(system: LinearSystem, cert) -> bool:
    """Re-check a certificate by exact substitution."""
    rows = system.constraints
    if isinstance(cert, Feasible):
        x = cert.witness
        if len(x) != system.num_vars:
            return False
        for c in rows:
            lhs = sum((a * xi for a, xi in zip(c.coeffs, x) if a), Fraction(0))
            if c.relation == ">=" and not lhs >= c.rhs:
                return False
            if c.relation == ">" and not lhs > c.rhs:
                return False
            if c.relation == "=" and lhs != c.rhs:
                return False
        return True
    if isinstance(cert, Infeasible):
        y = cert.farkas
        if len(y) != len(rows):
            return False
        for yi, c in zip(y, rows):
            if c.relation != "=" and yi < 0:
                return False
        for j in range(system.num_vars):
            if sum((yi * c.coeffs[j] for yi, c in zip(y, rows) if yi), Fraction(0)) != 0:
                return False
        yb = sum((yi * c.rhs for yi, c in zip(y, rows) if yi), Fraction(0))
        if yb > 0:
            return True
        return yb == 0 and any(yi > 0 for yi, c in zip(y, rows) if c.relation == ">")
    return False


# ---------------------------------------------------------------------------
# dense tableau simplex on {A x = b, x >= 0}

class _Infeasible(Exception):
    pass


def _pivot(T, r, c):
    row = T[r]
    p = row[c]
    inv = Fraction(1, p) if isinstance(p, int) else 1 / p
    T[r] = row = [v * inv if v else v for v in row]
    nz = [j for j, v in enumerate(row) if v]
    for i, other in enumerate(T):
        if i != r:
            f = other[c]
            if f:
                other = list(other)
                for j in nz:
                    other[j] = other[j] - f * row[j]
                T[i] = other


def _run(T, basis, ncols):
    """Maximise; ``T[-1]`` is the reduced-cost row ``[r_1 .. r_N, -objective]``.

    Bland's rule: lowest-index improving column enters, ties in the ratio
    test leave by lowest basic index.
    """
    m = len(basis)
    while True:
        cost = T[-1]
        enter = next((j for j in range(ncols) if cost[j] > 0), None)
        if enter is None:
            return
        best = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            raise ArithmeticError("objective unbounded")
        _pivot(T, best[1], enter)
        basis[best[1]] = enter


def _solve_standard(A, b, c=None, zero=Fraction(0)):
    """Return x >= 0 with A x = b maximising c.x (or any feasible x when c is None)."""
    m = len(A)
    n = len(A[0]) if m else 0
    T = []
    for i in range(m):
        row, rhs = list(A[i]), b[i]
        if rhs < 0:
            row, rhs = [-v for v in row], -rhs
        T.append(row + [zero + int(k == i) for k in range(m)] + [rhs])
    basis = [n + i for i in range(m)]
    # phase 1: maximise -sum(artificials)
    cost = [sum((T[i][j] for i in range(m)), zero) for j in range(n)] + [zero] * m
    cost.append(sum((T[i][-1] for i in range(m)), zero))
    T.append(cost)
    _run(T, basis, n + m)
    if T[-1][-1] != 0:
        raise _Infeasible
    T.pop()
    # drive artificials out of the basis; drop redundant rows
    i = 0
    while i < len(T):
        if basis[i] >= n:
            col = next((j for j in range(n) if T[i][j] != 0), None)
            if col is None:
                del T[i]
                del basis[i]
                continue
            _pivot(T, i, col)
            basis[i] = col
        i += 1
    T = [row[:n] + [row[-1]] for row in T]
    if c is not None:
        cost = list(c) + [zero]
        for i, bv in enumerate(basis):
            f = cost[bv]
            if f:
                cost = [a - f * r for a, r in zip(cost, T[i])]
        T.append(cost)
        _run(T, basis, n)
        T.pop()
    x = [zero] * n
    for i, bv in enumerate(basis):
        x[bv] = T[i][-1]
    return x


def _relaxed_problem(system: LinearSystem, with_eps: bool, zero):
    """Standard-form encoding of the system; variables [x+, x-, (e+, e-), slacks]."""
    nv = system.num_vars
    rows = system.constraints
    n_slack = sum(1 for r in rows if r.relation != "=") + (1 if with_eps else 0)
    eps_off = 2 * nv
    slack_off = eps_off + (2 if with_eps else 0)
    width = slack_off + n_slack
    A, b = [], []
    s = 0
    for r in rows:
        line = [zero] * width
        for j, a in enumerate(r.coeffs):
            line[j] = a
            line[nv + j] = -a
        if r.relation == ">" and with_eps:
            line[eps_off] = zero - 1
            line[eps_off + 1] = zero + 1
        if r.relation != "=":
            line[slack_off + s] = zero - 1
            s += 1
        A.append(line)
        b.append(r.rhs)
    if with_eps:
        line = [zero] * width
        line[eps_off] = zero + 1
        line[eps_off + 1] = zero - 1
        line[slack_off + s] = zero + 1
        A.append(line)
        b.append(zero + 1)
    return A, b, width, eps_off


def _alternative(system: LinearSystem, zero):
    """Solve the Motzkin alternative; return multipliers or None."""
    rows = system.constraints
    k = len(rows)
    nv = system.num_vars
    # y = y+ - y- for equality rows, y >= 0 otherwise
    cols = []
    for i, r in enumerate(rows):
        cols.append((i, 1))
        if r.relation == "=":
            cols.append((i, -1))

    def column(i, s):
        r = rows[i]
        return [s * a for a in r.coeffs] + [s * r.rhs]

    base = [column(i, s) for i, s in cols]
    for case in ("positive", "strict"):
        if case == "strict" and not system.has_strict:
            continue
        A = [[base[c][j] for c in range(len(cols))] for j in range(nv)]
        b = [zero] * nv
        A.append([base[c][nv] for c in range(len(cols))])
        if case == "positive":
            b.append(zero + 1)
        else:
            b.append(zero)
            A.append([zero + (1 if rows[i].relation == ">" else 0) for i, s in cols])
            b.append(zero + 1)
        try:
            y_split = _solve_standard(A, b, zero=zero)
        except _Infeasible:
            continue
        y = [zero] * k
        for (i, s), v in zip(cols, y_split):
            y[i] = y[i] + s * v
        return tuple(y)
    return None


def _working_copy(system: LinearSystem):
    """Rational systems are solved over gmpy2 rationals when available."""
    exact = any(isinstance(x, FieldElement) for c in system.constraints for x in (*c.coeffs, c.rhs))
    if exact or _mpq is None:
        return system, Fraction(0), lambda v: v
    work = LinearSystem(system.num_vars)
    work.constraints = [
        Constraint(tuple(_mpq(x) for x in c.coeffs), c.relation, _mpq(c.rhs)) for c in system.constraints
    ]
    return work, _mpq(0), lambda v: Fraction(int(v.numerator), int(v.denominator))


def lp_feasible(system: LinearSystem):
    """Decide feasibility of a mixed strict/non-strict system exactly."""
    return _record(system, _lp_feasible(system))


def _lp_feasible(system: LinearSystem):
    nv = system.num_vars
    strict = system.has_strict
    work, zero, back = _working_copy(system)
    A, b, width, eps_off = _relaxed_problem(work, strict, zero)
    try:
        if strict:
            c = [zero] * width
            c[eps_off] = zero + 1
            c[eps_off + 1] = zero - 1
            sol = _solve_standard(A, b, c, zero)
            eps = sol[eps_off] - sol[eps_off + 1]
        else:
            sol = _solve_standard(A, b, zero=zero)
            eps = None
        x = tuple(back(sol[j] - sol[nv + j]) for j in range(nv))
        if eps is None or eps > 0:
            return Feasible(x, None if eps is None else back(eps))
    except _Infeasible:
        pass
    y = _alternative(work, zero)
    if y is None:
        raise ArithmeticError("neither a witness nor a Farkas certificate was found")
    return Infeasible(tuple(back(v) for v in y))
