"""Efficient and weakly efficient sets, exact planar chains, weight certificates
and the epsilon-modified bi-objective lasso."""

__version__ = "0.1.0"

from ._backend import BACKEND
from .order import IndexSet, InvalidArgument, leq, lneq, lt, nonempty_subsets
from .effset import (
    CapacityError,
    PointSet,
    SolutionSet,
    TheoremInconsistency,
    TheoremVerdict,
    condition_alpha,
    condition_beta,
    efficient_set,
    efficient_set_fast,
    efficient_solutions,
    is_efficient_point,
    strictly_efficient,
    theorem_verdict,
    weakly_efficient_set,
    weakly_efficient_solutions,
)
from .geom2d import (
    Polygon2,
    PolygonAnalysis,
    SegmentChain,
    Staircase2,
    efficient_chain,
    example_polygon,
    fdh_is_convex,
    lower_envelope,
    verdict_polygon,
    weakly_efficient_chain,
)
from .certificate import WeightCertificate, find_certificate, verify_certificate

__all__ = [
    "BACKEND", "IndexSet", "InvalidArgument", "leq", "lneq", "lt", "nonempty_subsets",
    "CapacityError", "PointSet", "SolutionSet", "TheoremInconsistency", "TheoremVerdict",
    "condition_alpha", "condition_beta", "efficient_set", "efficient_set_fast",
    "efficient_solutions", "is_efficient_point", "strictly_efficient", "theorem_verdict",
    "weakly_efficient_set", "weakly_efficient_solutions",
    "Polygon2", "PolygonAnalysis", "SegmentChain", "Staircase2", "efficient_chain",
    "example_polygon", "fdh_is_convex", "lower_envelope", "verdict_polygon",
    "weakly_efficient_chain", "WeightCertificate", "find_certificate", "verify_certificate",
]
