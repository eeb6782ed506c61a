"""Finite partial linear spaces with perpendicularity: builders and checkers."""

from .analysis import (
    NetParams,
    ParallelClasses,
    PolePolarCensus,
    check_counting_formulas,
    check_parallel_iff_common_perp,
    extract_tau,
    lemma_battery,
    net_parameters,
    parallel_classes,
    pole_polar_census,
    unique_perpendicular,
    verify_theorem_roundtrip,
)
from .axioms import AxiomVerdict, ClassificationReport, check_axiom, check_thickness, classify
from .constructions import (
    GkConfig,
    LatinSquareSet,
    attach_perpendicularity,
    build_affine_plane,
    build_net_from_mols,
    construct_gk,
    delete_parallel_classes,
)
from .geometry import Geometry
from .tau import Tau, fixed_point_free_involutions

__all__ = [
    "AxiomVerdict",
    "ClassificationReport",
    "Geometry",
    "GkConfig",
    "LatinSquareSet",
    "NetParams",
    "ParallelClasses",
    "PolePolarCensus",
    "Tau",
    "attach_perpendicularity",
    "build_affine_plane",
    "build_net_from_mols",
    "check_axiom",
    "check_counting_formulas",
    "check_parallel_iff_common_perp",
    "check_thickness",
    "classify",
    "construct_gk",
    "delete_parallel_classes",
    "extract_tau",
    "fixed_point_free_involutions",
    "lemma_battery",
    "net_parameters",
    "parallel_classes",
    "pole_polar_census",
    "unique_perpendicular",
    "verify_theorem_roundtrip",
]
