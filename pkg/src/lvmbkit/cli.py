"""Command-line front end.

Exit status: 0 on success, 2 when a validation fails (the witness is in the
report), 1 on unreadable or ill-formed input.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .configuration import (
    balance_and_oddify,
    gale_dual,
    gale_dual_inverse,
    is_balanced,
    is_odd,
    leaf_type,
    quasilattice_info,
    rationality_invariants,
)
from .delzant import (
    delzant_check,
    n_group_connected,
    prefix_spans_quasilattice,
    reduced_polytope_check,
    validate_presentation,
)
from .errors import CapExceeded, DimensionError, LVMBError, NotALattice, SchemaError
from .fan import DEFAULT_SEED, betti_numbers, fvector, hvector, validate_fan
from .io import (
    dump_configuration,
    dump_points,
    exact_and_approx,
    load_configuration,
    load_lvmb,
    load_presentation,
    load_triangulation,
    read_json,
)
from .lvmb import (
    LVMBDatum,
    bosio_i,
    bosio_ii,
    datum_from_fan,
    is_basis,
    is_virtual_chamber,
    manifold_report,
)
from .polytopal import datum_polytopality, polytopality_report

COMMANDS = ("analyze", "gale", "check-fan", "check-polytopal", "betti", "delzant", "leaf-type", "render")


class _Failure(Exception):
    """A validation failed; carries the report to print before exiting with 2."""

    def __init__(self, report):
        super().__init__("validation failed")
        self.report = report


def _vec(v) -> list:
    return [exact_and_approx(x) for x in v]


def _config_and_fan(obj, args):
    V = load_configuration(obj)
    T = load_triangulation(obj, V.n, V.d) if "simplices" in obj else None
    if T is not None and args.lp_size_cap is not None:
        pairs = len(T) * (len(T) - 1) // 2
        if pairs > args.lp_size_cap:
            raise SchemaError(f"{pairs} pairwise LPs exceed --lp-size-cap {args.lp_size_cap}")
    return V, T


def _fan_section(V, T, args) -> dict:
    cert = validate_fan(V, T, seed=args.seed)
    out = {"certificate": cert.to_json()}
    if cert.ok:
        out["f_vector"] = list(fvector(T))
        out["h_vector"] = list(hvector(T))
    return out, cert


def _betti_section(V, T, cert, args) -> dict:
    try:
        rep = betti_numbers(V, T, shelling_cap=args.shelling_cap, certificate=cert)
    except CapExceeded as exc:
        raise SchemaError(str(exc)) from exc
    return {
        "betti": list(rep.betti),
        "h_vector": list(rep.h_vector),
        "h-vector-valid": rep.h_vector_valid,
        "reason": rep.reason,
        "euler_characteristic": rep.euler_characteristic,
    }


def _manifold_section(rep) -> dict:
    return {
        "n": rep.n,
        "m": rep.m,
        "complex_dim": rep.complex_dim,
        "torus_case": rep.is_torus_case,
        "kaehler": rep.kaehler,
        "rational": rep.rational,
        "rationality": {"a": rep.rationality[0], "b": rep.rationality[1]},
        "leaf_type": _leaf(rep.leaf_type),
    }


def _leaf(lt) -> dict:
    return {
        "torus_rank": lt.torus_rank,
        "euclidean_rank": lt.euclidean_rank,
        "all_leaves_closed": lt.all_leaves_closed,
        "description": lt.describe(),
    }


def _polytopal_section(rep) -> dict:
    return {
        "polytopal": rep.polytopal,
        "transversely_kaehler": rep.transversely_kaehler,
        "class": rep.lvm_class,
        "heights": _vec(rep.heights) if rep.heights is not None else None,
        "chamber_point": _vec(rep.chamber_nu) if rep.chamber_nu is not None else None,
        "certificates_verified": rep.verify(),
    }


def _analyze_points(obj, args) -> dict:
    points, chamber = load_lvmb(obj)
    V = gale_dual_inverse(points)
    a, b = rationality_invariants(V)
    report = {
        "points": {"n": points.n, "m": points.m},
        "gale_dual": dump_configuration(V),
        "rationality": {"a": a, "b": b},
        "leaf_type": _leaf(leaf_type(V, (a, b))),
    }
    if chamber is None:
        return report
    if not all(is_basis(tau, points) for tau in chamber.bases):
        report["virtual_chamber"] = {"ok": False, "reason": "not every member is a basis"}
        raise _Failure(report)
    datum = LVMBDatum(points, chamber)
    one = bosio_i(datum)
    two = bosio_ii(chamber)
    report["virtual_chamber"] = {
        "ok": one.ok and two is None,
        "bosio_i": one.ok,
        "bosio_i_failing_pair": [sorted(i + 1 for i in s) for s in one.failing_pair] if one.failing_pair else None,
        "bosio_ii": two is None,
        "bosio_ii_violation": {"basis": [i + 1 for i in two[0]], "index": two[1] + 1} if two else None,
    }
    if two is not None or not one.ok:
        raise _Failure(report)
    mrep = manifold_report(datum, verified=True)
    report["manifold"] = _manifold_section(mrep)
    report["complex_dim"] = mrep.complex_dim
    report["polytopality"] = _polytopal_section(datum_polytopality(datum))
    return report


def cmd_analyze(obj, args) -> dict:
    if "points" in obj:
        return _analyze_points(obj, args)
    V, T = _config_and_fan(obj, args)
    a, b = rationality_invariants(V)
    Q = quasilattice_info(V)
    report = {
        "configuration": {
            "n": V.n,
            "d": V.d,
            "h": V.h,
            "balanced": is_balanced(V),
            "odd": is_odd(V),
            "rationality": {"a": a, "b": b},
            "rational": a == V.n - V.d,
            "quasilattice": {"zmodule_rank": Q.zmodule_rank, "is_lattice": Q.is_lattice},
        }
    }
    W = V if is_balanced(V) and is_odd(V) else balance_and_oddify(V)
    if W.n != V.n:
        report["configuration"]["extended"] = dump_configuration(W)
    report["leaf_type"] = _leaf(leaf_type(W))
    if T is None:
        report["complex_dim"] = W.n - 1 - (W.n - W.d - 1) // 2
        return report
    fan, cert = _fan_section(V, T, args)
    report["fan"] = fan
    if not cert.ok:
        raise _Failure(report)
    datum = datum_from_fan(V, T)
    mrep = manifold_report(datum, verified=True)
    report["manifold"] = _manifold_section(mrep)
    report["complex_dim"] = mrep.complex_dim
    report["betti"] = _betti_section(V, T, cert, args)
    report["polytopality"] = _polytopal_section(polytopality_report(V, T, certificate=cert))
    return report


def cmd_gale(obj, args) -> dict:
    if "points" in obj:
        points, _ = load_lvmb(obj)
        V = gale_dual_inverse(points)
        return {"direction": "points-to-vectors", "configuration": dump_configuration(V)}
    V = load_configuration(obj)
    W = V if is_balanced(V) and is_odd(V) else balance_and_oddify(V)
    out = {"direction": "vectors-to-points", "points": dump_points(gale_dual(W))}
    if W.n != V.n:
        out["extended_configuration"] = dump_configuration(W)
    return out


def cmd_check_fan(obj, args) -> dict:
    V, T = _config_and_fan(obj, args)
    if T is None:
        raise SchemaError("input: missing field 'simplices'")
    fan, cert = _fan_section(V, T, args)
    if not cert.ok:
        raise _Failure(fan)
    return fan


def cmd_check_polytopal(obj, args) -> dict:
    if "points" in obj:
        points, chamber = load_lvmb(obj)
        if chamber is None:
            raise SchemaError("input: missing field 'bases'")
        if not is_virtual_chamber(points, chamber):
            raise _Failure({"virtual_chamber": False})
        return _polytopal_section(datum_polytopality(LVMBDatum(points, chamber)))
    V, T = _config_and_fan(obj, args)
    if T is None:
        raise SchemaError("input: missing field 'simplices'")
    fan, cert = _fan_section(V, T, args)
    if not cert.ok:
        raise _Failure({"fan": fan})
    return _polytopal_section(polytopality_report(V, T, certificate=cert))


def cmd_betti(obj, args) -> dict:
    V, T = _config_and_fan(obj, args)
    if T is None:
        raise SchemaError("input: missing field 'simplices'")
    fan, cert = _fan_section(V, T, args)
    if not cert.ok:
        raise _Failure({"fan": fan})
    return _betti_section(V, T, cert, args)


def cmd_delzant(obj, args) -> dict:
    P = load_presentation(obj)
    pres = validate_presentation(P)
    report = {
        "presentation": {
            "ok": pres.ok,
            "kinds": list(pres.kinds),
            "minima": _vec(pres.minima),
            "primitive": list(pres.primitive) if pres.primitive is not None else None,
            "vertices": [_vec(mu) for mu in pres.vertices],
        },
        "n_group_connected": n_group_connected(P),
        "prefix_spans_quasilattice": prefix_spans_quasilattice(P),
    }
    try:
        dz = delzant_check(P, assume_simple=args.assume_simple)
        report["delzant"] = {
            "simple": dz.simple,
            "rational": dz.rational,
            "delzant": dz.delzant,
            "labels": list(dz.labels),
            "lerman_tolman": dz.lerman_tolman,
        }
    except NotALattice:
        report["delzant"] = {"rational": False}
    sl = reduced_polytope_check(P)
    report["slice"] = {
        "ok": sl.ok,
        "dimension": sl.slice_dim,
        "bijection": sl.bijection,
        "sphere_identity": sl.sphere_identity,
        "radius": exact_and_approx(sl.radius) if sl.radius is not None else None,
        "note": sl.note,
        "vertices": [_vec(r) for r in sl.slice_vertices],
    }
    if not (pres.ok and sl.ok):
        raise _Failure(report)
    return report


def cmd_leaf_type(obj, args) -> dict:
    V = load_configuration(obj)
    W = V if is_balanced(V) and is_odd(V) else balance_and_oddify(V)
    a, b = rationality_invariants(W)
    out = _leaf(leaf_type(W, (a, b)))
    out["rationality"] = {"a": a, "b": b}
    return out


def cmd_render(obj, args) -> str:
    from .render import render_svg

    if "normals" in obj:
        P = load_presentation(obj)
        return render_svg(P=P)
    V = load_configuration(obj)
    if V.d != 2:
        raise DimensionError("render requires d = 2")
    T = load_triangulation(obj, V.n, V.d) if "simplices" in obj else None
    return render_svg(V, T)


HANDLERS = {
    "analyze": cmd_analyze,
    "gale": cmd_gale,
    "check-fan": cmd_check_fan,
    "check-polytopal": cmd_check_polytopal,
    "betti": cmd_betti,
    "delzant": cmd_delzant,
    "leaf-type": cmd_leaf_type,
    "render": cmd_render,
}


def _text(report, indent: int = 0) -> list:
    pad = "  " * indent
    lines = []
    if isinstance(report, dict):
        for key, value in report.items():
            if isinstance(value, dict) and set(value) == {"exact", "approx"}:
                lines.append(f"{pad}{key}: {_scalar_text(value)}")
            elif isinstance(value, (dict, list)) and value and not _flat(value):
                lines.append(f"{pad}{key}:")
                lines.extend(_text(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_inline(value)}")
    elif isinstance(report, list):
        for item in report:
            if isinstance(item, (dict, list)) and not _flat(item):
                lines.append(f"{pad}-")
                lines.extend(_text(item, indent + 1))
            else:
                lines.append(f"{pad}- {_inline(item)}")
    return lines


def _flat(value) -> bool:
    if isinstance(value, list):
        return all(not isinstance(x, (dict, list)) or _is_scalar(x) for x in value)
    return _is_scalar(value)


def _is_scalar(value) -> bool:
    return isinstance(value, dict) and set(value) == {"exact", "approx"}


def _scalar_text(value) -> str:
    exact = value["exact"]
    if isinstance(exact, dict):
        exact = "theta-poly(" + ", ".join(exact["coeffs"]) + ")"
    return f"{exact} (approx {value['approx']})"


def _inline(value) -> str:
    if _is_scalar(value):
        return _scalar_text(value)
    if isinstance(value, list):
        return "(" + ", ".join(_inline(v) for v in value) + ")"
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, dict):
        return json.dumps(value, sort_keys=True)
    return str(value)


def format_report(command: str, report, fmt: str) -> str:
    if isinstance(report, str):
        return report
    if fmt == "json":
        return json.dumps({"command": command, "report": report}, indent=2, sort_keys=True) + "\n"
    return "\n".join([command] + _text(report, 1)) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lvmbkit", description="Exact checks for triangulated vector configurations, LVMB data and polytope presentations.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("input", help="UTF-8 JSON input file")
    parser.add_argument("--format", choices=("text", "json", "svg"), default=None)
    parser.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_SEED)
    parser.add_argument("--shelling-cap", type=int, default=12)
    parser.add_argument("--lp-size-cap", type=int, default=None)
    parser.add_argument("--out", default=None, help="write the report here instead of stdout")
    parser.add_argument("--assume-simple", action="store_true")
    return parser


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    fmt = args.format or ("svg" if args.command == "render" else "text")
    if fmt == "svg" and args.command != "render":
        print("error: --format svg is only available for render", file=sys.stderr)
        return 1
    if args.command == "render" and fmt != "svg":
        print("error: render only produces svg", file=sys.stderr)
        return 1
    try:
        obj = read_json(args.input)
        report = HANDLERS[args.command](obj, args)
    except _Failure as failure:
        _emit(format_report(args.command, failure.report, fmt), args.out)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except LVMBError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _emit(format_report(args.command, report, fmt), args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
