"""Exact Gale duality, complete simplicial fans, LVMB virtual chambers and
Delzant-type polytope presentations, with re-verifiable certificates."""

__version__ = "0.1.0"

from ._kernels import BACKEND
from .configuration import (
    LeafType,
    PointConfiguration,
    Quasilattice,
    VectorConfiguration,
    balance_and_oddify,
    gale_dual,
    gale_dual_inverse,
    is_balanced,
    is_graded,
    is_odd,
    is_primitive,
    is_rational,
    leaf_type,
    quasilattice_info,
    rationality_invariants,
    relations,
    same_relations,
)
from .delzant import (
    PolytopePresentation,
    delzant_check,
    moment_data,
    n_group_connected,
    normal_fan,
    reduced_polytope_check,
    validate_presentation,
    vertices,
)
from .errors import *  # noqa: F401,F403
from .fan import (
    FanCertificate,
    Triangulation,
    betti_numbers,
    fvector,
    hvector,
    shelling_order,
    validate_fan,
    verify_failure,
)
from .field import AlgebraicField, FieldElement, field_arith, sign
from .linalg import Lattice, hnf, kernel_basis, rank
from .lp import Feasible, Infeasible, LinearSystem, lp_feasible, recording, verify_certificate
from .lvmb import (
    LVMBDatum,
    VirtualChamber,
    bosio_i,
    bosio_ii,
    complements,
    complements_inv,
    datum_from_fan,
    is_basis,
    is_chamber,
    is_virtual_chamber,
    manifold_report,
)
from .polytopal import (
    chamber_point,
    nu_characterization,
    polytopality_report,
    regularity_certificate,
)
