"""Sample-path generation for the six stationary process kinds, plus marginal
transforms into proportional-hazard / proportional-reversed-hazard families.

The six kinds come in two constructions times three marginal families:

* Moving-minimum/maximum ("kundu-*"): each value combines one fresh uniform
  with the uniform shared with the previous step, so the process is
  one-dependent.  ``x[n] = max(u[n-1]**(1/alpha), u[n]**(1/beta))``.
* Recursive ("am-*"): a Markov recursion mixing a power of the previous value
  with a fresh innovation, started at the stationary marginal so no burn-in is
  needed.

All six are generated through a single building-block path in (0, 1) (the
moving-maximum ``x`` or the recursive ``y``) and mapped pointwise:
complement ``1 - x`` for the bounded survival-form kinds, reciprocal
``sigma / x`` for the heavy-tailed kinds.  Shared seeds therefore satisfy the
complement and reciprocal identities bitwise.

The heavy-tailed recursive kind is deliberately computed through the
reciprocal identity: the direct recursion written with a negative exponent on
``(prev/sigma)`` would leave the support (values would fall below ``sigma``)
and does not have the stationary marginal; see VALIDATION_NOTES.md.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional, Union

import numpy as np

from . import kernels
from .distributions import Cpfd, ParetoI, Pfd
from .exceptions import DomainError, ParameterError, UsageError
from .rng import UniformStream

__all__ = [
    "ProcessKind",
    "KunduParams",
    "AmParams",
    "ProcessSpec",
    "Path",
    "Baseline",
    "pareto_baseline",
    "step",
    "generate_path",
    "transform_marginal",
]


class ProcessKind(str, Enum):
    KUNDU_PFD = "kundu-pfd"
    AM_PFD = "am-pfd"
    KUNDU_CPFD = "kundu-cpfd"
    AM_CPFD = "am-cpfd"
    KUNDU_PARETO = "kundu-pareto"
    AM_PARETO = "am-pareto"

    @property
    def is_kundu(self) -> bool:
        return self in (ProcessKind.KUNDU_PFD, ProcessKind.KUNDU_CPFD, ProcessKind.KUNDU_PARETO)

    @property
    def is_pareto(self) -> bool:
        return self in (ProcessKind.KUNDU_PARETO, ProcessKind.AM_PARETO)

    @property
    def is_pfd(self) -> bool:
        return self in (ProcessKind.KUNDU_PFD, ProcessKind.AM_PFD)


@dataclass(frozen=True)
class KunduParams:
    """Shapes of the moving-minimum kinds: alpha on the shared (previous)
    uniform, beta on the fresh one."""

    alpha: float
    beta: float

    def __post_init__(self):
        if not (self.alpha > 0):
            raise ParameterError(f"alpha must be > 0, got {self.alpha}")
        if not (self.beta > 0):
            raise ParameterError(f"beta must be > 0, got {self.beta}")

    @property
    def total(self) -> float:
        return self.alpha + self.beta


@dataclass(frozen=True)
class AmParams:
    """Shapes of the recursive kinds; requires 0 < delta < alpha."""

    alpha: float
    delta: float

    def __post_init__(self):
        if not (self.alpha > 0):
            raise ParameterError(f"alpha must be > 0, got {self.alpha}")
        if not (0 < self.delta < self.alpha):
            raise ParameterError(
                f"delta must satisfy 0 < delta < alpha, got delta={self.delta}, alpha={self.alpha}"
            )


ShapeParams = Union[KunduParams, AmParams]


@dataclass(frozen=True)
class ProcessSpec:
    """Everything needed to regenerate one path: kind, shapes, optional scale,
    highest index m (the path has m+1 values, indices 0..m) and a 64-bit seed."""

    kind: ProcessKind
    shape: ShapeParams
    m: int
    seed: int
    sigma: Optional[float] = None

    def __post_init__(self):
        kind = ProcessKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind.is_kundu and not isinstance(self.shape, KunduParams):
            raise ParameterError(f"{kind.value} requires KunduParams")
        if not kind.is_kundu and not isinstance(self.shape, AmParams):
            raise ParameterError(f"{kind.value} requires AmParams")
        if kind.is_pareto:
            if self.sigma is None or not (self.sigma > 0):
                raise ParameterError(f"{kind.value} requires sigma > 0, got {self.sigma}")
        elif self.sigma is not None:
            raise ParameterError(f"{kind.value} does not take sigma")
        if not (isinstance(self.m, int) and self.m >= 1):
            raise ParameterError(f"m must be an integer >= 1, got {self.m}")
        if not (0 <= int(self.seed) < (1 << 64)):
            raise ParameterError("seed must fit in 64 unsigned bits")

    def to_dict(self) -> dict:
        d = {"kind": self.kind.value, "m": self.m, "seed": self.seed}
        if isinstance(self.shape, KunduParams):
            d["alpha"] = self.shape.alpha
            d["beta"] = self.shape.beta
        else:
            d["alpha"] = self.shape.alpha
            d["delta"] = self.shape.delta
        if self.sigma is not None:
            d["sigma"] = self.sigma
        return d

    @staticmethod
    def from_dict(d: dict) -> "ProcessSpec":
        kind = ProcessKind(d["kind"])
        if kind.is_kundu:
            shape: ShapeParams = KunduParams(d["alpha"], d["beta"])
        else:
            shape = AmParams(d["alpha"], d["delta"])
        return ProcessSpec(kind=kind, shape=shape, m=int(d["m"]), seed=int(d["seed"]),
                           sigma=d.get("sigma"))


@dataclass
class Path:
    """An ordered realization, indices 0..m.  ``spec`` is None for ingested or
    transformed data; ``label`` carries provenance for those."""

    values: np.ndarray
    spec: Optional[ProcessSpec] = None
    label: str = ""

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.ndim != 1 or self.values.size < 1:
            raise UsageError("a path must be a 1-D sequence with at least one value")

    def __len__(self) -> int:
        return self.values.size

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["index", "value"])
        for i, v in enumerate(self.values):
            w.writerow([i, repr(float(v))])
        return buf.getvalue()

    def to_json(self) -> str:
        doc = {
            "spec": self.spec.to_dict() if self.spec is not None else "external",
            "label": self.label,
            "values": [float(v) for v in self.values],
        }
        return json.dumps(doc, indent=2)

    @staticmethod
    def from_json(text: str) -> "Path":
        doc = json.loads(text)
        spec = None if doc.get("spec") in (None, "external") else ProcessSpec.from_dict(doc["spec"])
        return Path(np.asarray(doc["values"], dtype=float), spec=spec, label=doc.get("label", ""))


def stationary_marginal(kind: ProcessKind, shape: ShapeParams, sigma: Optional[float] = None):
    """The stationary one-dimensional law of the given kind."""
    kind = ProcessKind(kind)
    total = shape.total if isinstance(shape, KunduParams) else shape.alpha
    if kind is ProcessKind.KUNDU_PFD or kind is ProcessKind.AM_PFD:
        return Pfd(total)
    if kind is ProcessKind.KUNDU_CPFD or kind is ProcessKind.AM_CPFD:
        return Cpfd(total)
    if sigma is None:
        raise ParameterError(f"{kind.value} requires sigma")
    return ParetoI(sigma, total)


def _map_building_block(kind: ProcessKind, block: np.ndarray, sigma: Optional[float]) -> np.ndarray:
    if kind.is_pfd:
        return block
    if kind.is_pareto:
        return sigma / block
    return 1.0 - block


def step(kind: ProcessKind, shape: ShapeParams, prev_value: Optional[float], u,
         sigma: Optional[float] = None) -> float:
    """Advance the process one index.

    Moving-minimum kinds take ``u = (u_prev, u_new)`` and ignore ``prev_value``;
    recursive kinds take a single uniform and require the previous value inside
    the process support.  Heavy-tailed kinds additionally need ``sigma`` and are
    computed through the reciprocal of the (0,1) building block.
    """
    kind = ProcessKind(kind)
    if kind.is_pareto:
        if sigma is None or not (sigma > 0):
            raise ParameterError(f"{kind.value} step requires sigma > 0, got {sigma}")
    elif sigma is not None:
        raise UsageError(f"{kind.value} step does not take sigma")

    if kind.is_kundu:
        if not isinstance(shape, KunduParams):
            raise UsageError(f"{kind.value} requires KunduParams")
        try:
            u_prev, u_new = (float(u[0]), float(u[1]))
        except (TypeError, IndexError) as exc:
            raise UsageError(f"{kind.value} step needs a pair of uniforms") from exc
        for val in (u_prev, u_new):
            if not (0.0 < val < 1.0):
                raise DomainError("uniforms must lie strictly inside (0, 1)")
        x = max(u_prev ** (1.0 / shape.alpha), u_new ** (1.0 / shape.beta))
        if kind is ProcessKind.KUNDU_PFD:
            return x
        if kind is ProcessKind.KUNDU_CPFD:
            return 1.0 - x
        return sigma / x

    if not isinstance(shape, AmParams):
        raise UsageError(f"{kind.value} requires AmParams")
    if np.ndim(u) != 0:
        raise UsageError(f"{kind.value} step needs exactly one uniform")
    u = float(u)
    if not (0.0 < u < 1.0):
        raise DomainError("uniform must lie strictly inside (0, 1)")
    if prev_value is None:
        raise UsageError(f"{kind.value} step needs the previous value")
    prev_value = float(prev_value)
    if kind is ProcessKind.AM_PFD:
        y_prev = prev_value
    elif kind is ProcessKind.AM_CPFD:
        y_prev = 1.0 - prev_value
    else:
        if not (prev_value > sigma):
            raise DomainError(f"previous value {prev_value} outside support (> sigma)")
        y_prev = sigma / prev_value
    if not (0.0 < y_prev < 1.0):
        raise DomainError(f"previous value {prev_value} outside the process support")
    y = max(y_prev ** (shape.alpha / (shape.alpha - shape.delta)), u ** (1.0 / shape.delta))
    if kind is ProcessKind.AM_PFD:
        return y
    if kind is ProcessKind.AM_CPFD:
        return 1.0 - y
    return sigma / y


def generate_path(spec: ProcessSpec) -> Path:
    """Generate the full path for ``spec``.  Identical spec, identical path.

    Moving-minimum kinds draw m+2 uniforms (one conceptual uniform before
    index 0) so index 0 is already stationary; recursive kinds draw m+1 and
    start at the stationary marginal.
    """
    stream = UniformStream(spec.seed)
    if spec.kind.is_kundu:
        u = stream.take(spec.m + 2)
        block = kernels.kundu_path(u, spec.shape.alpha, spec.shape.beta)
    else:
        u = stream.take(spec.m + 1)
        block = kernels.am_path(u, spec.shape.alpha, spec.shape.delta)
    return Path(_map_building_block(spec.kind, block, spec.sigma), spec=spec)


@dataclass(frozen=True)
class Baseline:
    """A baseline law given by its survival function and quantile function.

    ``quantile`` must invert ``1 - survival``; ``survival`` must be strictly
    decreasing on ``support``.
    """

    survival: Callable[[np.ndarray], np.ndarray]
    quantile: Callable[[np.ndarray], np.ndarray]
    support: tuple[float, float]
    name: str = "baseline"


def pareto_baseline(sigma: float) -> Baseline:
    """Unit-tail-index heavy-tailed baseline: survival (x/sigma)**-1,
    quantile sigma/(1-y).  Applying it to a bounded survival-form path yields
    the corresponding heavy-tailed process exactly."""
    base = ParetoI(sigma, 1.0)
    return Baseline(survival=base.survival, quantile=base.quantile,
                    support=(sigma, float("inf")), name=f"pareto:{sigma:g}")


def transform_marginal(path: Path, baseline: Baseline, direction: str = "ph") -> Path:
    """Push a (0,1)-valued path through the baseline quantile function.

    ``direction='ph'`` treats the input as a survival-form (complementary)
    path and produces proportional-hazard marginals; ``direction='prh'``
    treats it as a distribution-form path and produces proportional-reversed-
    hazard marginals.  Both are the same pointwise map; the tag records which
    family the output belongs to.  Monotone, so ordering and dependence
    structure are preserved.
    """
    if direction not in ("ph", "prh"):
        raise UsageError(f"direction must be 'ph' or 'prh', got {direction!r}")
    v = path.values
    if np.any(v <= 0.0) or np.any(v >= 1.0):
        raise DomainError("transform_marginal needs values strictly inside (0, 1)")
    out = np.asarray(baseline.quantile(v), dtype=float)
    return Path(out, spec=None, label=f"{direction}:{baseline.name}")
