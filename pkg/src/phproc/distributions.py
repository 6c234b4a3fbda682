"""Closed-form marginal families: power-function, complementary power-function,
and classical heavy-tailed scale families.

* ``Pfd(alpha)``      -- CDF ``x**alpha`` on (0, 1); Beta(alpha, 1).
* ``Cpfd(alpha)``     -- CDF ``1 - (1-x)**alpha`` on (0, 1); Beta(1, alpha).
* ``ParetoI(sigma, alpha)`` -- survival ``(x/sigma)**-alpha`` on (sigma, inf).

All methods are pure and accept scalars or numpy arrays.  CDF evaluation
outside the support clamps silently to 0/1 (convenient when comparing against
empirical CDFs); quantile and inverse-sampling inputs are validated strictly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError, ParameterError

__all__ = ["Pfd", "Cpfd", "ParetoI"]


def _check_open_unit(u, what: str):
    arr = np.asarray(u, dtype=float)
    if np.any(arr <= 0.0) or np.any(arr >= 1.0):
        raise DomainError(f"{what} must lie strictly inside (0, 1)")
    return arr


@dataclass(frozen=True)
class Pfd:
    """Power-function distribution with shape ``alpha``."""

    alpha: float

    def __post_init__(self):
        if not (self.alpha > 0):
            raise ParameterError(f"alpha must be > 0, got {self.alpha}")

    @property
    def support(self) -> tuple[float, float]:
        return (0.0, 1.0)

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        out = np.clip(x, 0.0, 1.0) ** self.alpha
        return out if out.ndim else float(out)

    def survival(self, x):
        out = 1.0 - np.asarray(self.cdf(x))
        return out if out.ndim else float(out)

    def quantile(self, p):
        p = _check_open_unit(p, "probability")
        out = p ** (1.0 / self.alpha)
        return out if out.ndim else float(out)

    def sample_at(self, u):
        """Deterministic inverse-CDF transform of open-interval uniforms."""
        u = _check_open_unit(u, "uniform variate")
        out = u ** (1.0 / self.alpha)
        return out if out.ndim else float(out)

    def mean(self) -> float:
        return self.alpha / (self.alpha + 1.0)

    def variance(self) -> float:
        a = self.alpha
        return a / ((a + 1.0) ** 2 * (a + 2.0))


@dataclass(frozen=True)
class Cpfd:
    """Complementary power-function distribution: survival ``(1-x)**alpha``."""

    alpha: float

    def __post_init__(self):
        if not (self.alpha > 0):
            raise ParameterError(f"alpha must be > 0, got {self.alpha}")

    @property
    def support(self) -> tuple[float, float]:
        return (0.0, 1.0)

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        # -expm1(alpha*log1p(-x)) == 1-(1-x)**alpha, stable near both endpoints;
        # log1p(-1) = -inf at the upper endpoint still yields exactly 1.0
        with np.errstate(divide="ignore"):
            out = -np.expm1(self.alpha * np.log1p(-np.clip(x, 0.0, 1.0)))
        return out if out.ndim else float(out)

    def survival(self, x):
        out = 1.0 - np.asarray(self.cdf(x))
        return out if out.ndim else float(out)

    def quantile(self, p):
        p = _check_open_unit(p, "probability")
        out = -np.expm1(np.log1p(-p) / self.alpha)
        return out if out.ndim else float(out)

    def sample_at(self, u):
        u = _check_open_unit(u, "uniform variate")
        out = 1.0 - u ** (1.0 / self.alpha)
        return out if out.ndim else float(out)

    def mean(self) -> float:
        return 1.0 / (self.alpha + 1.0)

    def variance(self) -> float:
        a = self.alpha
        return a / ((a + 1.0) ** 2 * (a + 2.0))


@dataclass(frozen=True)
class ParetoI:
    """Classical Pareto distribution with scale ``sigma`` and tail index ``alpha``."""

    sigma: float
    alpha: float

    def __post_init__(self):
        if not (self.sigma > 0):
            raise ParameterError(f"sigma must be > 0, got {self.sigma}")
        if not (self.alpha > 0):
            raise ParameterError(f"alpha must be > 0, got {self.alpha}")

    @property
    def support(self) -> tuple[float, float]:
        return (self.sigma, np.inf)

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        r = np.maximum(x, self.sigma) / self.sigma
        # -expm1(-alpha*log(r)) == 1 - r**-alpha, stable near the scale floor
        out = -np.expm1(-self.alpha * np.log(r))
        return out if out.ndim else float(out)

    def survival(self, x):
        out = 1.0 - np.asarray(self.cdf(x))
        return out if out.ndim else float(out)

    def quantile(self, p):
        p = _check_open_unit(p, "probability")
        out = self.sigma * (1.0 - p) ** (-1.0 / self.alpha)
        return out if out.ndim else float(out)

    def sample_at(self, u):
        u = _check_open_unit(u, "uniform variate")
        out = self.sigma * u ** (-1.0 / self.alpha)
        return out if out.ndim else float(out)

    def mean(self) -> float:
        """Finite only for alpha > 1."""
        if self.alpha <= 1:
            return float("inf")
        return self.sigma * self.alpha / (self.alpha - 1.0)

    def variance(self) -> float:
        """Finite only for alpha > 2."""
        if self.alpha <= 2:
            return float("inf")
        a = self.alpha
        return self.sigma**2 * a / ((a - 1.0) ** 2 * (a - 2.0))
