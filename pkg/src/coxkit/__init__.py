"""Exact Coxeter transformations of smooth complete toric varieties and rational surfaces."""

from .chow import ChowClass, ChowRing, ToricChowRing, build_chow
from .coxeter import (
    CoxeterReport,
    beilinson_cartan,
    betti_from_jordan,
    coxeter_matrix,
    coxeter_of_cartan,
    coxeter_polynomial,
    coxeter_report,
    jordan_blocks_from_cone_counts,
    jordan_type_of_coxeter,
    lefschetz_check,
    predicted_jordan_from_betti,
)
from .errors import CoxkitError, InputError, ValidationError, VerificationError
from .fan import (
    Fan,
    betti,
    cone_counts,
    hirzebruch,
    isomorphic,
    product_fan,
    projective_space,
    star_subdivide,
    validate,
)
from .jtensor import box_many, box_pair, brute_force_box, product_coxeter
from .linalg import JordanType, Matrix, full_jordan_type, rank
from .surface import RationalSurfaceModel, build_surface_chow, psi_matrix, surface_coxeter

__version__ = "0.1.0"

__all__ = [
    "ChowClass", "ChowRing", "ToricChowRing", "build_chow",
    "CoxeterReport", "beilinson_cartan", "betti_from_jordan", "coxeter_matrix",
    "coxeter_of_cartan", "coxeter_polynomial", "coxeter_report",
    "jordan_blocks_from_cone_counts", "jordan_type_of_coxeter", "lefschetz_check",
    "predicted_jordan_from_betti",
    "CoxkitError", "InputError", "ValidationError", "VerificationError",
    "Fan", "betti", "cone_counts", "hirzebruch", "isomorphic", "product_fan",
    "projective_space", "star_subdivide", "validate",
    "box_many", "box_pair", "brute_force_box", "product_coxeter",
    "JordanType", "Matrix", "full_jordan_type", "rank",
    "RationalSurfaceModel", "build_surface_chow", "psi_matrix", "surface_coxeter",
]
