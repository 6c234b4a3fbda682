"""Closed-form distributional quantities of the six process kinds: marginal
moments, lag-1 product moments with their A/B/C/D event decomposition,
autocorrelations, crossing probabilities and bivariate joint CDFs.

Every formula here is backed by a seeded Monte-Carlo run in the validation
suite; several commonly transcribed variants fail that oracle and are recorded
with verdicts in VALIDATION_NOTES.md.  In particular:

* the piecewise crossing probability is the probability that the *next* value
  is strictly below the current one (a decrease) for paths built by the
  generators in this package;
* the joint-CDF min-arm assignment follows from which uniform is shared
  between neighbouring values (alpha on the carried uniform);
* the product-moment decompositions use the corrected C/D terms.

Quantities whose existence conditions fail (heavy-tail moments at small tail
index, the removable singularity of the recursive heavy-tail product moment at
delta = 1) are reported as inapplicable flags, never as numbers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .distributions import Cpfd, ParetoI, Pfd
from .exceptions import ParameterError, UsageError
from .processes import AmParams, KunduParams, ProcessKind, ShapeParams, stationary_marginal

__all__ = [
    "CrossMomentBreakdown",
    "MomentReport",
    "theoretical_moments",
    "crossing_prob",
    "tie_prob",
    "joint_cdf",
]

# Tolerance band around the removable singularity of the recursive heavy-tail
# product moment; inside it the closed form is refused rather than evaluated.
DELTA_SINGULARITY_TOL = 1e-8


@dataclass(frozen=True)
class CrossMomentBreakdown:
    """Event decomposition of the building-block lag-1 product moment.

    The four terms split E(product) by which argument of each moving maximum
    wins (carried uniform vs fresh uniform); they apply to the one-dependent
    kinds only.  For bounded kinds they decompose E(x[n-1] * x[n]) of the
    moving-maximum block; for the heavy-tailed kind they decompose
    E(1/x[n-1] * 1/x[n]).
    """

    A: float
    B: float
    C: float
    D: float

    @property
    def total(self) -> float:
        return self.A + self.B + self.C + self.D


@dataclass
class MomentReport:
    """Closed-form mean, variance, lag-1 product moment and autocorrelation,
    with per-field applicability flags and explanatory notes."""

    kind: ProcessKind
    mean: Optional[float] = None
    variance: Optional[float] = None
    cross_moment: Optional[float] = None
    lag1_corr: Optional[float] = None
    breakdown: Optional[CrossMomentBreakdown] = None
    applicable: dict = field(default_factory=dict)
    notes: dict = field(default_factory=dict)


def _kundu_product_breakdown(alpha: float, beta: float) -> CrossMomentBreakdown:
    """Decomposition of E(x[n-1] x[n]) for the bounded moving-maximum block."""
    g = alpha + beta
    q = alpha**2 + beta**2 + alpha * beta + alpha + beta
    a_term = beta**2 / (beta + 1.0) * (1.0 / (g + 1.0) - alpha / q)
    b_term = alpha * beta / q
    c_term = (alpha * beta / ((alpha + 1.0) * (beta + 1.0))) * (
        1.0 - beta / (g + 1.0) - alpha / (g + 1.0) + alpha * beta / q
    )
    d_term = alpha**2 / (alpha + 1.0) * (1.0 / (g + 1.0) - beta / q)
    return CrossMomentBreakdown(a_term, b_term, c_term, d_term)


def _kundu_reciprocal_breakdown(alpha: float, beta: float) -> CrossMomentBreakdown:
    """Decomposition of E(1/x[n-1] 1/x[n]); requires alpha > 1 and beta > 1."""
    g = alpha + beta
    q = alpha**2 + beta**2 + alpha * beta - alpha - beta
    a_term = beta**2 / (beta - 1.0) * (1.0 / (g - 1.0) - alpha / q)
    b_term = alpha * beta / q
    c_term = (alpha * beta / ((alpha - 1.0) * (beta - 1.0))) * (
        1.0 - beta / (g - 1.0) - alpha / (g - 1.0) + alpha * beta / q
    )
    d_term = alpha**2 / (alpha - 1.0) * (1.0 / (g - 1.0) - beta / q)
    return CrossMomentBreakdown(a_term, b_term, c_term, d_term)


def _am_block_product(alpha: float, delta: float) -> float:
    """E(y[0] y[1]) for the recursive block on (0, 1)."""
    k = 1.0 / (1.0 / alpha + (1.0 + delta) / (alpha - delta) + 1.0)
    return (delta * alpha / (alpha + 1.0) + k) / (delta + 1.0)


def _am_reciprocal_product(alpha: float, delta: float) -> float:
    """E(1/y[0] 1/y[1]) for the recursive block; requires alpha > 2, delta != 1."""
    d2 = alpha**2 - 2.0 * alpha + delta
    return (alpha * delta / (delta - 1.0)) * (
        1.0 / (alpha - 1.0) - (alpha - delta) / d2
    ) + alpha * (alpha - delta) / d2


def theoretical_moments(kind: ProcessKind, shape: ShapeParams,
                        sigma: Optional[float] = None) -> MomentReport:
    """Closed-form moment report for any kind.

    Inapplicability (heavy-tail moments that do not exist, or the delta = 1
    removable singularity) is reported through ``applicable`` flags.
    """
    kind = ProcessKind(kind)
    rep = MomentReport(kind=kind)
    marginal = stationary_marginal(kind, shape, sigma)

    if isinstance(marginal, (Pfd, Cpfd)):
        rep.mean = marginal.mean()
        rep.variance = marginal.variance()
        rep.applicable["mean"] = True
        rep.applicable["variance"] = True
    else:
        total = marginal.alpha
        rep.applicable["mean"] = total > 1
        rep.applicable["variance"] = total > 2
        if rep.applicable["mean"]:
            rep.mean = marginal.mean()
        else:
            rep.notes["mean"] = f"needs total shape > 1, got {total:g}"
        if rep.applicable["variance"]:
            rep.variance = marginal.variance()
        else:
            rep.notes["variance"] = f"needs total shape > 2, got {total:g}"

    if isinstance(shape, KunduParams):
        a, b = shape.alpha, shape.beta
        if kind is ProcessKind.KUNDU_PFD:
            rep.breakdown = _kundu_product_breakdown(a, b)
            rep.cross_moment = rep.breakdown.total
            rep.applicable["cross_moment"] = True
        elif kind is ProcessKind.KUNDU_CPFD:
            rep.breakdown = _kundu_product_breakdown(a, b)
            g = a + b
            rep.cross_moment = 1.0 - 2.0 * g / (g + 1.0) + rep.breakdown.total
            rep.applicable["cross_moment"] = True
        else:
            if a > 1 and b > 1:
                rep.breakdown = _kundu_reciprocal_breakdown(a, b)
                rep.cross_moment = sigma**2 * rep.breakdown.total
                rep.applicable["cross_moment"] = True
            else:
                rep.applicable["cross_moment"] = False
                rep.notes["cross_moment"] = "needs alpha > 1 and beta > 1"
    else:
        a, d = shape.alpha, shape.delta
        if kind is ProcessKind.AM_PFD:
            rep.cross_moment = _am_block_product(a, d)
            rep.applicable["cross_moment"] = True
        elif kind is ProcessKind.AM_CPFD:
            rep.cross_moment = 1.0 - 2.0 * a / (a + 1.0) + _am_block_product(a, d)
            rep.applicable["cross_moment"] = True
        else:
            if a <= 2:
                rep.applicable["cross_moment"] = False
                rep.notes["cross_moment"] = "needs alpha > 2"
            elif abs(d - 1.0) <= DELTA_SINGULARITY_TOL:
                rep.applicable["cross_moment"] = False
                rep.notes["cross_moment"] = (
                    "removable singularity at delta = 1; closed form refused, "
                    "use the Monte-Carlo oracle there"
                )
            else:
                rep.cross_moment = sigma**2 * _am_reciprocal_product(a, d)
                rep.applicable["cross_moment"] = True

    corr_ok = rep.applicable.get("cross_moment", False) and rep.applicable.get("variance", False)
    rep.applicable["lag1_corr"] = corr_ok
    if corr_ok:
        rep.lag1_corr = (rep.cross_moment - rep.mean**2) / rep.variance
    else:
        rep.notes["lag1_corr"] = "needs both variance and cross moment"
    return rep


def crossing_prob(kind: ProcessKind, shape: ShapeParams) -> float:
    """P(next value < current value), i.e. the probability of a strict decrease
    between consecutive stationary values.

    This is the quantity the method-of-moments estimators invert.  For the
    one-dependent kinds at alpha = beta the event has a tie component; the
    value returned is the alpha <= beta branch, which matches the strict event
    (see :func:`tie_prob` and VALIDATION_NOTES.md).
    """
    kind = ProcessKind(kind)
    if isinstance(shape, KunduParams):
        a, b = shape.alpha, shape.beta
        if kind is ProcessKind.KUNDU_PFD:
            # The building block moves opposite to its complement/reciprocal.
            return a / (2.0 * a + b) if a > b else (a + b) / (a + 2.0 * b)
        if a > b:
            return (a + b) / (2.0 * a + b)
        return b / (2.0 * b + a)
    a, d = shape.alpha, shape.delta
    if kind is ProcessKind.AM_PFD:
        return a / (a + d)
    return d / (a + d)


def tie_prob(kind: ProcessKind, shape: ShapeParams) -> float:
    """P(next value == current value).  Positive only for the one-dependent
    kinds at alpha == beta, where the shared uniform can win both maxima."""
    kind = ProcessKind(kind)
    if isinstance(shape, KunduParams) and shape.alpha == shape.beta:
        return 1.0 / 3.0
    return 0.0


def _clamp_unit(v: float) -> float:
    return min(max(float(v), 0.0), 1.0)


def joint_cdf(kind: ProcessKind, shape: ShapeParams, earlier: float, later: float,
              sigma: Optional[float] = None) -> float:
    """Joint CDF of a consecutive pair (value at n-1, value at n).

    Arguments outside the support clamp to the boundary probability.  The
    formulas are derived from the generative constructions (shared-uniform
    structure for the one-dependent kinds, recursion for the Markov kinds) and
    validated against empirical joint frequencies; they reduce exactly to the
    stationary marginals when the other argument sits at the support maximum.
    """
    kind = ProcessKind(kind)
    if isinstance(shape, KunduParams):
        a, b = shape.alpha, shape.beta
        g = a + b
        if kind is ProcessKind.KUNDU_PFD:
            x0, x1 = _clamp_unit(earlier), _clamp_unit(later)
            return x0**a * x1**b * min(x0**b, x1**a)
        if kind is ProcessKind.KUNDU_CPFD:
            p0 = 1.0 - _clamp_unit(earlier)
            p1 = 1.0 - _clamp_unit(later)
            return 1.0 - p0**g - p1**g + p0**a * p1**b * min(p0**b, p1**a)
        if sigma is None or not (sigma > 0):
            raise ParameterError("pareto joint cdf requires sigma > 0")
        r0 = max(float(earlier), sigma) / sigma
        r1 = max(float(later), sigma) / sigma
        return 1.0 - r0**-g - r1**-g + r0**-a * r1**-b * min(r0**-b, r1**-a)

    a, d = shape.alpha, shape.delta
    if kind is ProcessKind.AM_PFD:
        y0, y1 = _clamp_unit(earlier), _clamp_unit(later)
        return y1**d * min(y0**a, y1 ** (a - d))
    if kind is ProcessKind.AM_CPFD:
        p0 = 1.0 - _clamp_unit(earlier)
        p1 = 1.0 - _clamp_unit(later)
        return 1.0 - p0**a - p1**a + p1**d * min(p0**a, p1 ** (a - d))
    if kind is ProcessKind.AM_PARETO:
        if sigma is None or not (sigma > 0):
            raise ParameterError("pareto joint cdf requires sigma > 0")
        r0 = max(float(earlier), sigma) / sigma
        r1 = max(float(later), sigma) / sigma
        return 1.0 - r0**-a - r1**-a + r1**-d * min(r0**-a, r1 ** -(a - d))
    raise UsageError(f"unsupported kind {kind}")
