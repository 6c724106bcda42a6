"""JSON encoding of scalars, configurations, triangulations and presentations.

Rationals are written as ``"p/q"`` strings (integers as ``"p"``).  An
algebraic scalar is ``{"coeffs": [...], "minpoly": [...], "interval": [lo, hi]}``;
inside a document with a top-level ``"field"`` block the ``minpoly`` and
``interval`` keys may be omitted, and a bare coefficient list is accepted.
Index sets are 1-based.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .configuration import PointConfiguration, VectorConfiguration, quasilattice_info
from .errors import LVMBError, SchemaError
from .fan import Triangulation
from .field import AlgebraicField, FieldElement, as_rational, common_field

__all__ = [
    "scalar_to_json",
    "scalar_from_json",
    "field_to_json",
    "field_from_json",
    "approx",
    "exact_and_approx",
    "read_json",
    "load_configuration",
    "load_triangulation",
    "load_lvmb",
    "load_presentation",
    "dump_configuration",
    "dump_points",
    "dump_presentation",
]


def _frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def field_to_json(K: AlgebraicField) -> dict:
    return {"minpoly": [_frac_str(c) for c in K.minpoly], "interval": [_frac_str(c) for c in K.interval]}


def field_from_json(obj, path: str = "field") -> AlgebraicField:
    if not isinstance(obj, dict) or "minpoly" not in obj or "interval" not in obj:
        raise SchemaError(f"{path}: expected an object with 'minpoly' and 'interval'")
    try:
        return AlgebraicField([as_rational(c) for c in obj["minpoly"]], [as_rational(c) for c in obj["interval"]])
    except (ValueError, ZeroDivisionError, LVMBError, TypeError) as exc:
        raise SchemaError(f"{path}: {exc}") from exc


def scalar_to_json(x, with_field: bool = True):
    if isinstance(x, FieldElement):
        if x.is_rational():
            return _frac_str(x.to_rational())
        out = {"coeffs": [_frac_str(c) for c in x.coeffs]}
        if with_field:
            out.update(field_to_json(x.field))
        return out
    return _frac_str(as_rational(x))


def scalar_from_json(obj, field: AlgebraicField | None = None, path: str = "value"):
    try:
        if isinstance(obj, bool):
            raise SchemaError(f"{path}: booleans are not scalars")
        if isinstance(obj, (int, str)):
            return as_rational(obj)
        if isinstance(obj, float):
            raise SchemaError(f"{path}: floats are not exact; write \"p/q\"")
        if isinstance(obj, list):
            if field is None:
                raise SchemaError(f"{path}: coefficient list needs a top-level 'field' block")
            return FieldElement(field, [as_rational(c) for c in obj])
        if isinstance(obj, dict):
            if "coeffs" not in obj:
                raise SchemaError(f"{path}: algebraic scalar needs 'coeffs'")
            K = field_from_json(obj, path) if "minpoly" in obj else field
            if K is None:
                raise SchemaError(f"{path}: algebraic scalar without a field")
            return FieldElement(K, [as_rational(c) for c in obj["coeffs"]])
    except SchemaError:
        raise
    except (ValueError, ZeroDivisionError, LVMBError, TypeError) as exc:
        raise SchemaError(f"{path}: {exc}") from exc
    raise SchemaError(f"{path}: cannot read {obj!r} as a scalar")


def approx(x) -> str:
    """12 significant digits, for human readers only."""
    if isinstance(x, FieldElement):
        value = float(x.approx(Fraction(1, 10**30)))
    else:
        value = float(as_rational(x))
    return format(value, ".12g")


def exact_and_approx(x) -> dict:
    return {"exact": scalar_to_json(x), "approx": approx(x)}


def read_json(path) -> dict:
    text = Path(path).read_text(encoding="utf-8")
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(obj, dict):
        raise SchemaError(f"{path}: top level must be a JSON object")
    return obj


def _require(obj: dict, key: str, kind, where: str):
    if key not in obj:
        raise SchemaError(f"{where}: missing field '{key}'")
    value = obj[key]
    if kind is int and (not isinstance(value, int) or isinstance(value, bool)):
        raise SchemaError(f"{where}.{key}: expected an integer")
    if kind is list and not isinstance(value, list):
        raise SchemaError(f"{where}.{key}: expected a list")
    return value


def _field(obj: dict):
    return field_from_json(obj["field"]) if obj.get("field") is not None else None


def _rows(obj: dict, key: str, K, width: int | None = None) -> list:
    rows = _require(obj, key, list, "input")
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, list):
            raise SchemaError(f"input.{key}[{i}]: expected a list")
        if width is not None and len(row) != width:
            raise SchemaError(f"input.{key}[{i}]: expected {width} entries, got {len(row)}")
        out.append(tuple(scalar_from_json(x, K, f"input.{key}[{i}][{j}]") for j, x in enumerate(row)))
    return out


def load_configuration(obj: dict) -> VectorConfiguration:
    """``{"d", "h"?, "vectors", "field"?}``."""
    K = _field(obj)
    d = _require(obj, "d", int, "input")
    vectors = _rows(obj, "vectors", K, d)
    if not vectors:
        raise SchemaError("input.vectors: empty")
    h = obj.get("h")
    if h is not None and (not isinstance(h, int) or isinstance(h, bool)):
        raise SchemaError("input.h: expected an integer")
    try:
        return VectorConfiguration(tuple(vectors), h)
    except LVMBError:
        raise
    except ValueError as exc:
        raise SchemaError(f"input: {exc}") from exc


def _index_sets(obj: dict, key: str, n: int) -> list:
    sets = _require(obj, key, list, "input")
    out = []
    for i, s in enumerate(sets):
        if not isinstance(s, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in s):
            raise SchemaError(f"input.{key}[{i}]: expected a list of integers")
        if any(not 1 <= x <= n for x in s):
            raise SchemaError(f"input.{key}[{i}]: indices must lie in 1..{n}")
        if len(set(s)) != len(s):
            raise SchemaError(f"input.{key}[{i}]: repeated index")
        out.append(s)
    return out


def load_triangulation(obj: dict, n: int, d: int) -> Triangulation:
    """``{"simplices": [[1, 2], ...]}`` (1-based)."""
    sets = _index_sets(obj, "simplices", n)
    if not sets:
        raise SchemaError("input.simplices: empty")
    return Triangulation.from_one_based(n, d, sets)


def load_lvmb(obj: dict):
    """``{"m", "points", "bases"?}`` -> ``(PointConfiguration, VirtualChamber | None)``."""
    from .lvmb import VirtualChamber

    K = _field(obj)
    m = _require(obj, "m", int, "input")
    points = PointConfiguration(tuple(_rows(obj, "points", K, 2 * m)), m)
    chamber = None
    if "bases" in obj:
        sets = _index_sets(obj, "bases", points.n)
        chamber = VirtualChamber.from_one_based(points.n, m, sets)
    return points, chamber


def load_presentation(obj: dict):
    """``{"d", "h"?, "normals", "levels", "quasilattice"?}``.

    ``quasilattice`` is an optional list of generators.
    """
    from .delzant import PolytopePresentation

    K = _field(obj)
    d = _require(obj, "d", int, "input")
    normals = _rows(obj, "normals", K, d)
    levels_raw = _require(obj, "levels", list, "input")
    levels = [scalar_from_json(x, K, f"input.levels[{i}]") for i, x in enumerate(levels_raw)]
    Q = None
    if obj.get("quasilattice") is not None:
        gens = _rows(obj, "quasilattice", K, d)
        Q = quasilattice_info(gens)
    return PolytopePresentation(tuple(normals), tuple(levels), obj.get("h"), Q)


def dump_configuration(V: VectorConfiguration) -> dict:
    K = V.field
    out = {"d": V.d, "h": V.h, "vectors": [[scalar_to_json(x, K is None) for x in v] for v in V.vectors]}
    if K is not None:
        out["field"] = field_to_json(K)
    return out


def dump_points(points: PointConfiguration, chamber=None) -> dict:
    K = common_field(x for p in points.points for x in p)
    out = {"m": points.m, "points": [[scalar_to_json(x, K is None) for x in p] for p in points.points]}
    if chamber is not None:
        out["bases"] = chamber.one_based()
    if K is not None:
        out["field"] = field_to_json(K)
    return out


def dump_presentation(P) -> dict:
    K = common_field([x for v in P.vectors for x in v] + list(P.levels))
    out = {
        "d": P.d,
        "h": P.h,
        "normals": [[scalar_to_json(x, K is None) for x in v] for v in P.vectors],
        "levels": [scalar_to_json(x, K is None) for x in P.levels],
    }
    if P.quasilattice is not None:
        out["quasilattice"] = [[scalar_to_json(x, K is None) for x in g] for g in P.quasilattice.generators]
    if K is not None:
        out["field"] = field_to_json(K)
    return out
