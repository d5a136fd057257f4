"""Target dimensions, projections and Monte Carlo checks for Johnson-Lindenstrauss embeddings."""

from .bounds import (
    BoundQuery,
    BoundResult,
    Method,
    compute_bound,
    dg_bound,
    exact_bound,
    exact_tail_sum,
    g_function,
    matousek_bound,
    theorem1_bound,
    theorem3_bound,
)
from .errors import ConvergenceError, DomainError
from .mcverify import DistortionReport, VerifySpec, estimate_tail_probability, run_pair_trials
from .projection import ProjectionSpec, pairwise_distances, project, sample_matrix

__version__ = "0.1.0"

__all__ = [
    "BoundQuery",
    "BoundResult",
    "Method",
    "compute_bound",
    "dg_bound",
    "exact_bound",
    "exact_tail_sum",
    "g_function",
    "matousek_bound",
    "theorem1_bound",
    "theorem3_bound",
    "ConvergenceError",
    "DomainError",
    "DistortionReport",
    "VerifySpec",
    "estimate_tail_probability",
    "run_pair_trials",
    "ProjectionSpec",
    "pairwise_distances",
    "project",
    "sample_matrix",
]
