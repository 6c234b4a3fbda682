"""Summary statistics and branch-split method-of-moments estimators.

The summary triple is (sample mean, fraction of strict decreases between
consecutive values, sample minimum).  The decrease fraction is the statistic
whose expectation equals :func:`phproc.analytics.crossing_prob`, so it is what
the moment equations invert; the increase and tie fractions are carried along
for validation reporting.

For the one-dependent kinds both ordering branches are solved and each is
checked against its own constraint (alpha > beta needs the decrease fraction
in (1/2, 2/3); alpha <= beta needs it in [1/3, 1/2)).  Exactly one branch is
self-consistent away from the boundaries; when neither is, the estimate is
returned flagged invalid with diagnostics rather than clamped.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .analytics import crossing_prob, theoretical_moments
from .exceptions import (
    DegenerateStatisticsError,
    InfeasibleStatisticsError,
    UsageError,
)
from .processes import AmParams, KunduParams, Path, ProcessKind, ShapeParams

__all__ = ["SummaryStats", "Estimate", "summarize", "estimate", "theoretical_summary"]

BRANCH_ALPHA_GT_BETA = "alpha_gt_beta"
BRANCH_ALPHA_LE_BETA = "alpha_le_beta"
BRANCH_NA = "n/a"


@dataclass(frozen=True)
class SummaryStats:
    """Path summaries: mean of all values, strict decrease/increase fractions
    over the ``pairs`` consecutive pairs, and the sample minimum."""

    mean: float
    p_down: float
    p_up: float
    sample_min: float
    pairs: int

    @property
    def p_tie(self) -> float:
        return 1.0 - self.p_down - self.p_up


@dataclass(frozen=True)
class Estimate:
    """Method-of-moments parameter estimates for one process kind.

    ``beta`` is set for the one-dependent kinds, ``delta`` for the recursive
    kinds, ``sigma`` for the heavy-tailed kinds.  ``valid`` means the estimates
    satisfy the kind's parameter constraints; invalid estimates keep their raw
    values so failure modes stay observable.
    """

    kind: ProcessKind
    alpha: float
    beta: Optional[float] = None
    delta: Optional[float] = None
    sigma: Optional[float] = None
    branch: str = BRANCH_NA
    valid: bool = True
    diagnostics: tuple[str, ...] = ()

    def shape_params(self) -> ShapeParams:
        """Validated shape parameters; raises if the estimate is not valid."""
        if self.beta is not None:
            return KunduParams(self.alpha, self.beta)
        return AmParams(self.alpha, self.delta)

    def to_dict(self) -> dict:
        d = {"kind": self.kind.value, "alpha": self.alpha}
        if self.beta is not None:
            d["beta"] = self.beta
        if self.delta is not None:
            d["delta"] = self.delta
        if self.sigma is not None:
            d["sigma"] = self.sigma
        d["branch"] = self.branch
        d["valid"] = self.valid
        d["diagnostics"] = list(self.diagnostics)
        return d


def summarize(path: Union[Path, np.ndarray]) -> SummaryStats:
    """Summary statistics of a path (needs at least two values)."""
    values = path.values if isinstance(path, Path) else np.asarray(path, dtype=float)
    if values.ndim != 1 or values.size < 2:
        raise UsageError("summarize needs a 1-D path with at least two values")
    diffs_later = values[1:]
    diffs_earlier = values[:-1]
    pairs = values.size - 1
    return SummaryStats(
        mean=float(np.mean(values)),
        p_down=float(np.count_nonzero(diffs_later < diffs_earlier)) / pairs,
        p_up=float(np.count_nonzero(diffs_later > diffs_earlier)) / pairs,
        sample_min=float(np.min(values)),
        pairs=pairs,
    )


def theoretical_summary(kind: ProcessKind, shape: ShapeParams,
                        sigma: Optional[float] = None) -> SummaryStats:
    """Exact population counterpart of :func:`summarize`: closed-form mean,
    closed-form decrease probability, and the true scale as the minimum."""
    kind = ProcessKind(kind)
    rep = theoretical_moments(kind, shape, sigma)
    if not rep.applicable.get("mean", False):
        raise InfeasibleStatisticsError(
            f"{kind.value}: mean does not exist for these parameters")
    p = crossing_prob(kind, shape)
    return SummaryStats(mean=rep.mean, p_down=p, p_up=1.0 - p,
                        sample_min=sigma if sigma is not None else 0.0,
                        pairs=0)


def _check_p(kind: ProcessKind, p: float) -> None:
    if p <= 0.0 or p >= 1.0:
        raise DegenerateStatisticsError(
            f"{kind.value}: decrease fraction {p:g} is degenerate (no information)")
    if kind.is_kundu and p == 0.5:
        raise DegenerateStatisticsError(
            f"{kind.value}: decrease fraction exactly 1/2 sits on the branch boundary")


def _estimate_kundu(kind: ProcessKind, total: float, p: float,
                    sigma: Optional[float]) -> Estimate:
    """Solve the two branches given the implied total shape ``total`` and the
    decrease fraction ``p``; return the self-consistent one."""
    # alpha > beta branch: p = total/(alpha + total)
    a1 = total * (1.0 - p) / p
    b1 = total * (2.0 * p - 1.0) / p
    ok1 = b1 > 0 and a1 > b1
    # alpha <= beta branch: p = beta/(beta + total)
    b2 = total * p / (1.0 - p)
    a2 = total * (1.0 - 2.0 * p) / (1.0 - p)
    ok2 = a2 > 0 and a2 <= b2

    if ok1 and not ok2:
        return Estimate(kind, a1, beta=b1, sigma=sigma, branch=BRANCH_ALPHA_GT_BETA)
    if ok2 and not ok1:
        return Estimate(kind, a2, beta=b2, sigma=sigma, branch=BRANCH_ALPHA_LE_BETA)
    if ok1 and ok2:
        # Only reachable in exotic edge cases; deterministic tie-break on the
        # larger implied separation, flagged so callers can treat it softly.
        pick1 = abs(a1 - b1) >= abs(a2 - b2)
        est = (a1, b1, BRANCH_ALPHA_GT_BETA) if pick1 else (a2, b2, BRANCH_ALPHA_LE_BETA)
        return Estimate(kind, est[0], beta=est[1], sigma=sigma, branch=est[2],
                        valid=True, diagnostics=("ambiguous: both branches self-consistent",))
    # Neither branch is self-consistent; report the one with positive
    # parameters (decrease fraction >= 2/3 implies the first branch's signs).
    diag = (
        f"no self-consistent branch: decrease fraction {p:g} outside (1/3, 2/3)",
        f"alpha>beta branch gave ({a1:g}, {b1:g}); alpha<=beta branch gave ({a2:g}, {b2:g})",
    )
    if p > 0.5:
        return Estimate(kind, a1, beta=b1, sigma=sigma, branch=BRANCH_ALPHA_GT_BETA,
                        valid=False, diagnostics=diag)
    return Estimate(kind, a2, beta=b2, sigma=sigma, branch=BRANCH_ALPHA_LE_BETA,
                    valid=False, diagnostics=diag)


def estimate(kind: ProcessKind, stats: SummaryStats) -> Estimate:
    """Invert the moment equations for ``kind`` given ``stats``.

    Feeding the exact theoretical summary of any valid parameter set returns
    that parameter set (to floating-point accuracy) on the branch matching its
    ordering.
    """
    kind = ProcessKind(kind)
    p = stats.p_down
    mean = stats.mean

    if kind is ProcessKind.KUNDU_CPFD:
        _check_p(kind, p)
        if not (0.0 < mean < 1.0):
            raise InfeasibleStatisticsError(f"mean {mean:g} outside (0, 1)")
        total = (1.0 - mean) / mean
        return _estimate_kundu(kind, total, p, sigma=None)

    if kind is ProcessKind.KUNDU_PARETO:
        _check_p(kind, p)
        sigma_hat = stats.sample_min
        if not (sigma_hat > 0) or mean <= sigma_hat:
            raise InfeasibleStatisticsError(
                f"mean {mean:g} must exceed the sample minimum {sigma_hat:g}")
        total = mean / (mean - sigma_hat)
        return _estimate_kundu(kind, total, p, sigma=sigma_hat)

    if kind is ProcessKind.AM_CPFD:
        _check_p(kind, p)
        if not (0.0 < mean < 1.0):
            raise InfeasibleStatisticsError(f"mean {mean:g} outside (0, 1)")
        alpha = (1.0 - mean) / mean
        delta = alpha * p / (1.0 - p)
        ok = 0.0 < delta < alpha
        diag = () if ok else (
            f"implied delta {delta:g} not inside (0, alpha={alpha:g}); "
            f"decrease fraction {p:g} must be below 1/2",)
        return Estimate(kind, alpha, delta=delta, valid=ok, diagnostics=diag)

    if kind is ProcessKind.AM_PARETO:
        _check_p(kind, p)
        sigma_hat = stats.sample_min
        if not (sigma_hat > 0) or mean <= sigma_hat:
            raise InfeasibleStatisticsError(
                f"mean {mean:g} must exceed the sample minimum {sigma_hat:g}")
        delta = mean * p / ((mean - sigma_hat) * (1.0 - p))
        alpha = delta * (1.0 - p) / p
        ok = 0.0 < delta < alpha
        diag = () if ok else (
            f"implied delta {delta:g} not inside (0, alpha={alpha:g}); "
            f"decrease fraction {p:g} must be below 1/2",)
        return Estimate(kind, alpha, delta=delta, sigma=sigma_hat, valid=ok,
                        diagnostics=diag)

    raise UsageError(
        f"no moment estimator for {kind.value}; estimate the complementary kind "
        "and use the pointwise identities")
