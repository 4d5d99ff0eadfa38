"""Convex hulls of planar Brownian motions and Brownian bridges.

Computes the expected perimeter and area of the convex hull spanned by
independent planar Brownian motions and bridges on [0, 1] by three
independent routes (closed forms, adaptive quadrature, Monte Carlo path
simulation), together with the distribution of the time at which the
ensemble's combined coordinate maximum is attained.
"""

from ._backend import backend_name
from .analytic import catalog
from .geometry import ConvexPolygon, area, convex_hull, perimeter, support_function
from .montecarlo import (
    Estimate,
    GofReport,
    estimate_hull_functional,
    estimate_max_moments,
    ks_test,
    sample_argmax_times,
)
from .process_sim import (
    ArgmaxRecord,
    EnsembleSpec,
    PlanarPath,
    combined_argmax,
    sample_bb,
    sample_bm,
)
from .quadrature import (
    QuadratureError,
    QuadResult,
    QuadSpec,
    expected_area_mn,
    expected_perimeter_mn,
    integrate,
    integrate_half_line,
)
from .rng import RngStream

__version__ = "0.1.0"

__all__ = [
    "ArgmaxRecord",
    "ConvexPolygon",
    "EnsembleSpec",
    "Estimate",
    "GofReport",
    "PlanarPath",
    "QuadResult",
    "QuadSpec",
    "QuadratureError",
    "RngStream",
    "area",
    "backend_name",
    "catalog",
    "combined_argmax",
    "convex_hull",
    "estimate_hull_functional",
    "estimate_max_moments",
    "expected_area_mn",
    "expected_perimeter_mn",
    "integrate",
    "integrate_half_line",
    "ks_test",
    "perimeter",
    "sample_argmax_times",
    "sample_bb",
    "sample_bm",
    "support_function",
    "__version__",
]
