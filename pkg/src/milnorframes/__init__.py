"""Exact computations with Milnor frames on metric Lie algebras."""
from .algebra import LieAlgebra, jacobi_defect, lower_central_series
from .config import NumericConfig
from .errors import InexactError, NotPositiveDefinite, PreconditionError
from .frames import (
    counterexample_metric,
    h3h3_obstruction,
    h4_has_orthonormal_milnor,
    l_operator,
    MilnorFrameWitness,
    milnor_frame_3d,
)
from .geometry import (
    FrameConstants,
    InnerProduct,
    MetricLieAlgebra,
    orthonormal_frame,
    ricci_orthonormal,
    ricci_signature,
    sectional_curvature,
)
from .milnor import MilnorData, adjacent_product_check, decompose, milnor_algebra, normalize
from .soliton import milnor_soliton_criterion, nilsoliton_solve

__version__ = "0.1.0"

__all__ = [
    "FrameConstants",
    "InexactError",
    "InnerProduct",
    "LieAlgebra",
    "MetricLieAlgebra",
    "MilnorData",
    "MilnorFrameWitness",
    "NotPositiveDefinite",
    "NumericConfig",
    "PreconditionError",
    "adjacent_product_check",
    "counterexample_metric",
    "decompose",
    "h3h3_obstruction",
    "h4_has_orthonormal_milnor",
    "jacobi_defect",
    "l_operator",
    "lower_central_series",
    "milnor_algebra",
    "milnor_frame_3d",
    "milnor_soliton_criterion",
    "nilsoliton_solve",
    "normalize",
    "orthonormal_frame",
    "ricci_orthonormal",
    "ricci_signature",
    "sectional_curvature",
]
