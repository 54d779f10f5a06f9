"""Empirical distribution functions, exact sup-norm distances to analytic
models, and Monte Carlo diagnostics of their convergence."""

from .convergence import (
    CertificateSchedule,
    EscapeReport,
    Trajectory,
    certificate_schedule,
    entry_index,
    escape_probability,
    pointwise_moments,
    run_trajectory,
    verify_schedule,
)
from .coverage import (
    CoverageReport,
    Partition,
    PartitionReport,
    atom_miss_probability,
    estimate_miss,
    partition_report,
    range_miss_probability,
    tail_speed_compare,
)
from .distributions import (
    Bernoulli,
    DistributionModel,
    Exponential,
    FiniteDiscrete,
    Kind,
    Pareto,
    Uniform,
    cdf_eval,
    draw_sample,
    parse_model,
    quantile,
)
from .ecdf import Ecdf, Sample, Side, SupDistanceResult, build_ecdf, ecdf_eval, pointwise_error, sup_distance
from .errors import DomainError, GridInsufficientError
from .rng import SeedSpec

__version__ = "0.1.0"
