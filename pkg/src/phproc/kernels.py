"""Hot numeric kernels.

The recursive (Markov) path constructions cannot be vectorised over time, so
their inner loops are JIT-compiled with numba.  Setting the environment
variable ``PHPROC_DISABLE_NUMBA=1`` before import selects a pure-Python/numpy
fallback with identical semantics; ``python -m phproc.benchmark`` compares the
two.  The moving-minimum constructions are plain vectorised numpy either way.

Both backends are importable individually (``am_path_python`` and, when numba
is present, ``am_path_numba``); ``am_path`` is whichever one the package uses.
"""

from __future__ import annotations

import os

import numpy as np

NUMBA_DISABLED = os.environ.get("PHPROC_DISABLE_NUMBA", "").strip() not in ("", "0")


def _am_path(u: np.ndarray, alpha: float, delta: float) -> np.ndarray:
    # Recursive maximum construction on (0,1): y[0] = u[0]**(1/alpha),
    # y[n] = max(y[n-1]**(alpha/(alpha-delta)), u[n]**(1/delta)).
    n = u.shape[0]
    y = np.empty(n, dtype=np.float64)
    y[0] = u[0] ** (1.0 / alpha)
    chain_exp = alpha / (alpha - delta)
    innov_exp = 1.0 / delta
    for i in range(1, n):
        carried = y[i - 1] ** chain_exp
        innovation = u[i] ** innov_exp
        y[i] = carried if carried > innovation else innovation
    return y


am_path_python = _am_path
am_path_numba = None

if not NUMBA_DISABLED:
    try:
        from numba import njit

        am_path_numba = njit(cache=True)(_am_path)
    except ImportError:  # pragma: no cover - numba is a declared dependency
        am_path_numba = None

am_path = am_path_numba if am_path_numba is not None else am_path_python

USING_NUMBA = am_path is am_path_numba and am_path_numba is not None


def kundu_path(u: np.ndarray, alpha: float, beta: float) -> np.ndarray:
    """Moving-maximum construction from overlapping uniforms.

    ``u`` has length m+2; returns m+1 values
    ``x[n] = max(u[n]**(1/alpha), u[n+1]**(1/beta))`` so each consecutive pair
    of outputs shares exactly one uniform.
    """
    return np.maximum(u[:-1] ** (1.0 / alpha), u[1:] ** (1.0 / beta))
