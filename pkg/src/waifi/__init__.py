"""Exact decision of WAI polynomial first integrals for planar polynomial
vector fields."""

from .field import FieldElement, Tower
from .infnear import Cluster, Configuration, InfNearPoint, PairingVector, pairing
from .integrability import (
    IntegralCertificate,
    algorithm1,
    algorithm2,
    poincare_bound,
    poincare_degree,
)
from .linsys import linear_system, pencil_base_points, pencil_vector_field
from .poly import MultiPoly, parse_poly, poly_gcd
from .reduction import ReductionResult, dicritical_points, max_free_points, reduce
from .vfield import (
    AffineVectorField,
    ProjectiveOneForm,
    cofactor,
    projectivize,
    verify_first_integral,
)

__version__ = "0.1.0"

__all__ = [
    "AffineVectorField",
    "Cluster",
    "Configuration",
    "FieldElement",
    "InfNearPoint",
    "IntegralCertificate",
    "MultiPoly",
    "PairingVector",
    "ProjectiveOneForm",
    "ReductionResult",
    "Tower",
    "algorithm1",
    "algorithm2",
    "cofactor",
    "dicritical_points",
    "linear_system",
    "max_free_points",
    "pairing",
    "parse_poly",
    "pencil_base_points",
    "pencil_vector_field",
    "poincare_bound",
    "poincare_degree",
    "poly_gcd",
    "projectivize",
    "reduce",
    "verify_first_integral",
]
