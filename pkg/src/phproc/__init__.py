"""Stationary minification processes with bounded and heavy-tailed marginals.

Simulation of six stationary process kinds (moving-minimum and recursive
constructions over power-function, complementary power-function and classical
heavy-tailed marginals), their closed-form moments and joint distributions,
branch-split method-of-moments estimation, a Monte-Carlo validation oracle,
and a CSV-driven fitting pipeline.
"""

from .analytics import (
    CrossMomentBreakdown,
    MomentReport,
    crossing_prob,
    joint_cdf,
    theoretical_moments,
    tie_prob,
)
from .distributions import Cpfd, ParetoI, Pfd
from .exceptions import (
    DataError,
    DegenerateStatisticsError,
    DomainError,
    InfeasibleStatisticsError,
    ParameterError,
    PhprocError,
    UsageError,
)
from .fitting import FitReport, Series, ecdf_transform, fit, load_series
from .inference import Estimate, SummaryStats, estimate, summarize, theoretical_summary
from .montecarlo import (
    StudyConfig,
    StudyReport,
    ValidationReport,
    ValidationRow,
    empirical_check,
    empirical_joint_cdf,
    marginal_ks,
    simulation_study,
)
from .processes import (
    AmParams,
    Baseline,
    KunduParams,
    Path,
    ProcessKind,
    ProcessSpec,
    generate_path,
    pareto_baseline,
    step,
    transform_marginal,
)
from .rng import UniformStream, derive_seed, uniforms

__version__ = "0.1.0"
