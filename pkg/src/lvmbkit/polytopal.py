"""Polytopality oracles for triangulated configurations.

Three independent routes decide whether a validated fan is polytopal:
a height function (regular triangulation), a nonempty chamber of the Gale
dual, and the nu-characterization over every basis of the dual.  The
report insists that they agree.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .configuration import VectorConfiguration
from .errors import NotValidated, OracleDisagreement
from .fan import FanCertificate, Triangulation, validate_fan
from .linalg import solve, transpose
from .lp import LinearSystem, lp_feasible, verify_certificate
from .lvmb import (
    LVMBDatum,
    dual_data,
    is_basis,
    is_chamber,
    open_simplex_contains,
)

__all__ = [
    "HeightCertificate",
    "PolytopalityReport",
    "regularity_certificate",
    "verify_heights",
    "chamber_point",
    "nu_characterization",
    "polytopality_report",
    "datum_polytopality",
]


@dataclass(frozen=True)
class HeightCertificate:
    """Heights ``omega`` inducing ``T``, or None together with the Farkas proof."""

    heights: tuple | None
    system: LinearSystem = field(repr=False, compare=False)
    lp: object = field(repr=False, compare=False)

    @property
    def regular(self) -> bool:
        return self.heights is not None

    def verify(self) -> bool:
        return verify_certificate(self.system, self.lp)


def _coordinates(V: VectorConfiguration, tau):
    """Columns: coordinates of every ``v_i`` in the basis ``tau``."""
    B = transpose([list(V.vectors[j]) for j in tau])
    out = {}
    for i in range(V.n):
        if i not in tau:
            out[i] = solve(B, list(V.vectors[i]))
    return out


def _height_system(V: VectorConfiguration, T: Triangulation) -> LinearSystem:
    system = LinearSystem(V.n)
    seen = set()
    zero = Fraction(0)
    for tau in T.sorted_simplices():
        for i, c in _coordinates(V, tau).items():
            row = [zero] * V.n
            row[i] = row[i] + 1
            for j, cij in zip(tau, c):
                row[j] = row[j] - cij
            key = tuple(row)
            if key not in seen:
                seen.add(key)
                system.add(row, ">", 0)
    return system


def regularity_certificate(V: VectorConfiguration, T: Triangulation, *,
                           certificate: FanCertificate | None = None) -> HeightCertificate:
    """Strict LP in ``omega``: the linear function interpolating ``omega`` on
    each maximal simplex lies strictly below ``omega_i`` at every other ``v_i``."""
    cert = certificate or validate_fan(V, T)
    if not cert.ok:
        raise NotValidated(f"not a complete simplicial fan ({cert.check} check failed)")
    system = _height_system(V, T)
    lp = lp_feasible(system)
    return HeightCertificate(tuple(lp.witness) if lp.feasible else None, system, lp)


def verify_heights(V: VectorConfiguration, T: Triangulation, heights) -> bool:
    """Direct check of the height condition, independent of any LP."""
    for tau in T.sorted_simplices():
        for i, c in _coordinates(V, tau).items():
            lift = sum((cij * heights[j] for j, cij in zip(tau, c)), Fraction(0))
            if not lift < heights[i]:
                return False
    return True


def chamber_point(datum: LVMBDatum):
    """``(nu, system, certificate)``; ``nu`` is None when the chamber is empty."""
    system, cert = is_chamber(datum)
    nu = tuple(cert.witness[: 2 * datum.m]) if cert.feasible else None
    return nu, system, cert


def nu_characterization(datum: LVMBDatum, nu=None):
    """A ``nu`` such that a basis belongs to the family iff its open simplex contains ``nu``.

    The candidate comes from :func:`chamber_point` unless given; the
    biconditional is then checked over every ``(2m+1)``-subset that is a basis.
    """
    if nu is None:
        nu, _, _ = chamber_point(datum)
        if nu is None:
            return None
    members = datum.chamber.bases
    k = 2 * datum.m + 1
    for sigma in itertools.combinations(range(datum.n), k):
        if not is_basis(sigma, datum.points):
            continue
        if (frozenset(sigma) in members) != open_simplex_contains(datum.points, sigma, nu):
            return None
    return tuple(nu)


@dataclass(frozen=True)
class PolytopalityReport:
    polytopal: bool
    transversely_kaehler: bool
    lvm_class: str  # "LVM" | "LVMB-not-LVM"
    heights: tuple | None
    chamber_nu: tuple | None
    nu_witness: tuple | None
    certificates: tuple = field(default=(), repr=False, compare=False)

    def verify(self) -> bool:
        return all(verify_certificate(s, c) for s, c in self.certificates)


def polytopality_report(V: VectorConfiguration, T: Triangulation, *,
                        certificate: FanCertificate | None = None) -> PolytopalityReport:
    """Run the height, chamber and nu oracles and require agreement."""
    cert = certificate or validate_fan(V, T)
    if not cert.ok:
        raise NotValidated(f"not a complete simplicial fan ({cert.check} check failed)")
    heights = regularity_certificate(V, T, certificate=cert)
    _, _, points, chamber = dual_data(V, T)
    datum = LVMBDatum(points, chamber)
    nu, csys, ccert = chamber_point(datum)
    witness = nu_characterization(datum, nu) if nu is not None else None
    answers = (heights.regular, nu is not None, witness is not None)
    if len(set(answers)) != 1:
        raise OracleDisagreement(f"regularity / chamber / nu oracles disagree: {answers}")
    polytopal = answers[0]
    return PolytopalityReport(
        polytopal=polytopal,
        transversely_kaehler=polytopal,
        lvm_class="LVM" if polytopal else "LVMB-not-LVM",
        heights=heights.heights,
        chamber_nu=nu,
        nu_witness=witness,
        certificates=((heights.system, heights.lp), (csys, ccert)),
    )


def datum_polytopality(datum: LVMBDatum) -> PolytopalityReport:
    """Polytopality starting from an LVMB datum (covers the torus case ``n = 2m + 1``).

    Outside the torus case the fan side is rebuilt with the inverse Gale
    transform and the complement family, and the full report is run.
    """
    from .configuration import gale_dual_inverse
    from .lvmb import complements_inv

    if datum.n == 2 * datum.m + 1:
        nu, csys, ccert = chamber_point(datum)
        witness = nu_characterization(datum, nu) if nu is not None else None
        if nu is None or witness is None:
            raise OracleDisagreement("a single basis always has a nonempty interior")
        return PolytopalityReport(True, True, "LVM", (), nu, witness, ((csys, ccert),))
    V = gale_dual_inverse(datum.points)
    T = complements_inv(datum.chamber, datum.n, V.d)
    return polytopality_report(V.with_h(0), T)
