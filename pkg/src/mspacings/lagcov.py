"""Lag-covariance assembly over stationary windows of an exponential stream.

Window totals w_t = x_t + ... + x_{t+m-1} over an iid exponential stream form
an (m-1)-dependent stationary sequence.  The per-window variance of a
centered sum-statistic combines the two-sided lag-covariance total of the
statistic values with a subtraction involving the window total; stationarity
makes the lag +j and lag -j covariances equal, so a single accumulator per
|j| is used and the two-sided total is cov(0) + 2 * sum_{j>=1} cov(j).

All estimators report batch-means standard errors over contiguous segments
of the stream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .errors import NonFiniteSample
from .rng import SeededStream

#: Batches used for every Monte Carlo standard error in the package.
DEFAULT_BATCHES = 30

# Window totals via per-window summation up to this order; cumulative sums
# beyond it (cheaper for wide windows, slightly less accurate).
_WINDOW_SUM_SWITCH = 64


@dataclass(frozen=True)
class Estimate:
    """Monte Carlo point estimate with a batch-means standard error."""

    value: float
    std_error: float


@dataclass(frozen=True)
class SigmaComponents:
    """One assembly of the per-window variance from lag covariances.

    ``corrected`` subtracts the squared covariance of the statistic with its
    own window total; ``holst`` subtracts the squared pooled cross-lag
    covariance divided by the order.  ``b`` is the lag-0 covariance with the
    window total.
    """

    corrected: float
    holst: float
    b: float


def window_sums(x: np.ndarray, m: int) -> np.ndarray:
    """Sliding totals of m consecutive entries; length len(x) - m + 1."""
    if m == 1:
        return x
    if m <= _WINDOW_SUM_SWITCH:
        return sliding_window_view(x, m).sum(axis=1)
    cs = np.concatenate([[0.0], np.cumsum(x)])
    return cs[m:] - cs[:-m]


def components(hv: np.ndarray, w: np.ndarray, m: int) -> SigmaComponents:
    """Assemble both variance forms from aligned value/total arrays.

    ``hv`` and ``w`` are indexed by window position; the first
    ``len(hv) - m + 1`` positions pair with every lag 0..m-1 inside the
    arrays, so all lags average over the same count.
    """
    positions = hv.size
    base_count = positions - (m - 1)
    if base_count < 2:
        raise ValueError("too few windows for the requested order")
    dh = hv - hv.mean()
    dw = w - w.mean()
    base = dh[:base_count]
    lag_total = 0.0
    cross_total = 0.0
    b = 0.0
    for j in range(m):
        cj = float(np.sum(base * dh[j : j + base_count]) / base_count)
        dj = float(np.sum(base * dw[j : j + base_count]) / base_count)
        weight = 1.0 if j == 0 else 2.0
        lag_total += weight * cj
        cross_total += weight * dj
        if j == 0:
            b = dj
    return SigmaComponents(
        corrected=lag_total - b * b,
        holst=lag_total - (cross_total / m) ** 2,
        b=b,
    )


def batched_components(
    hv: np.ndarray, w: np.ndarray, m: int, batches: int = DEFAULT_BATCHES
) -> list[SigmaComponents]:
    """The same assembly on ``batches`` contiguous segments of the stream."""
    base_count = hv.size - (m - 1)
    size = base_count // batches
    if size < max(2, 4 * m):
        raise ValueError("stream too short for batch-means standard errors")
    out = []
    for b in range(batches):
        lo = b * size
        hi = lo + size + (m - 1)
        out.append(components(hv[lo:hi], w[lo:hi], m))
    return out


def batch_std_error(batch_values: Sequence[float]) -> float:
    """Standard error of the full-stream estimate from batch replicates."""
    vals = np.asarray(batch_values, dtype=np.float64)
    return float(np.std(vals, ddof=1) / math.sqrt(vals.size))


def stream_window_values(h, m: int, draws: int, seed: int, stream_id: int = 0):
    """One stationary exponential stream of length draws + 2m with its
    window totals and statistic values.

    ``h`` is a StatisticKind (applied to window totals) or a TupleFunction
    of arity m (applied to the windows themselves).  Returns (x, hv, w).
    """
    from .statistics import TupleFunction, resolve_kind

    x = SeededStream(seed, stream_id).exponentials(draws + 2 * m)
    w = window_sums(x, m)
    if isinstance(h, TupleFunction):
        if h.arity != m:
            raise ValueError(f"tuple function has arity {h.arity}, expected {m}")
        with np.errstate(all="ignore"):
            hv = h.evaluate(sliding_window_view(x, m))
    else:
        kind = resolve_kind(h)
        with np.errstate(all="ignore"):
            hv = np.asarray(kind.sum_fn(w), dtype=np.float64)
    if not np.isfinite(hv).all():
        k = int(np.flatnonzero(~np.isfinite(hv))[0])
        raise NonFiniteSample(f"statistic value at window {k} is not finite")
    return x, hv, w
