"""Null asymptotics: closed-form moments, standardization, the first-order
mean correction, variance estimation for general summand families, and a
numeric check of the normal-limit moment condition.

The sampling model throughout is the exponential representation of uniform
spacings: scaled spacings behave like iid standard exponentials x_k (extended
circularly, x_{n+j} = x_j), and window totals |x_k^m| = x_k + ... + x_{k+m-1}
stand in for the scaled overlapping m-spacings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .errors import (
    DegenerateVariance,
    FamilyLengthMismatch,
    NonFiniteSample,
    UnsupportedKind,
)
from .lagcov import (
    DEFAULT_BATCHES,
    Estimate,
    batch_std_error,
    batched_components,
    components,
    stream_window_values,
)
from .rng import SeededStream
from .specfun import digamma_int, hurwitz_zeta2
from .statistics import (
    StatisticResult,
    TupleFunction,
    TupleFunctionFamily,
    resolve_kind,
)

_MIN_MC_DRAWS = 10_000
_MIN_REPLICATIONS = 100
_SQRT_HALF = math.sqrt(0.5)


@dataclass(frozen=True)
class AsymptoticMoments:
    """Leading-order null mean and variance of a statistic, with the
    per-window coefficients they scale from."""

    mean: float
    variance: float
    per_term_mean: float
    per_term_variance: float


@dataclass(frozen=True)
class GeneralMoments:
    """Monte Carlo estimates of the general variance ingredients.

    A is the summed expectation of the family; B the average covariance of
    each summand with its window total; C the average two-sided
    lag-covariance total; sigma2 = n (C - B^2).
    """

    A: float
    B: float
    C: float
    sigma2: float
    se_A: float
    se_B: float
    se_C: float
    se_sigma2: float
    n: int
    m: int
    replications: int
    seed: int

    def as_asymptotic_moments(self) -> "AsymptoticMoments":
        """Bridge to standardization; sigma2 that went negative from MC noise
        is clamped to 0 here while the raw value stays reported above."""
        variance = max(self.sigma2, 0.0)
        return AsymptoticMoments(mean=self.A, variance=variance,
                                 per_term_mean=self.A / self.n,
                                 per_term_variance=variance / self.n)


@dataclass(frozen=True)
class TestReport:
    """A standardized statistic with its two-sided and one-sided p-values."""

    value: float
    kind: str
    n: int
    m: int
    mean: float
    variance: float
    z: float
    p_two_sided: float
    p_upper: float
    p_lower: float


def closed_form_moments(kind, n: int, m: int) -> AsymptoticMoments:
    """Leading-order null moments for the named kinds.

    Per window of order m (psi is the digamma function, z2 the inverse-square
    tail sum from its argument):

    * greenwood: mean m(m+1), variance 2m(m+1)(2m+1)/3
    * moran:     mean psi(m), variance (2m^2-2m+1) z2(m) - 2m + 1
    * entropy:   mean m psi(m+1),
                 variance (2 (m(m+1))^2 z2(m+2) - m(m+1)(2m-1)) / 4

    The statistic-level moments multiply these by n.
    """
    kind = resolve_kind(kind)
    if m < 1:
        raise ValueError(f"order must be >= 1, got {m}")
    if n <= m:
        raise ValueError(f"need n > m, got n={n}, m={m}")
    if kind.name == "greenwood":
        mean_coeff = m * (m + 1)
        var_numerator = 2 * m * (m + 1) * (2 * m + 1)
        # one of m, m+1, 2m+1 is always divisible by 3, so this is exact
        per_var = float(var_numerator // 3)
        per_mean = float(mean_coeff)
        mean = float(n * mean_coeff)
        variance = float(n * (var_numerator // 3))
    elif kind.name == "moran":
        per_mean = digamma_int(m)
        per_var = (2 * m * m - 2 * m + 1) * hurwitz_zeta2(m) - 2 * m + 1
        mean = n * per_mean
        variance = n * per_var
    elif kind.name == "entropy":
        block = m * (m + 1)
        per_mean = m * digamma_int(m + 1)
        per_var = (2.0 * block * block * hurwitz_zeta2(m + 2) - block * (2 * m - 1)) / 4.0
        mean = n * per_mean
        variance = n * per_var
    else:
        raise UnsupportedKind(f"no closed-form moments for kind {kind.name!r}")
    return AsymptoticMoments(mean=mean, variance=variance,
                             per_term_mean=per_mean, per_term_variance=per_var)


def standardize(result: StatisticResult, moments: AsymptoticMoments) -> TestReport:
    """Center and scale a statistic and attach normal p-values.

    The two-sided p-value is 2 (1 - Phi(|z|)); the one-sided tail
    probabilities are included for callers with a directional alternative.
    """
    if not moments.variance > 0.0:
        raise DegenerateVariance(f"variance {moments.variance!r} is not positive")
    z = (result.value - moments.mean) / math.sqrt(moments.variance)
    return TestReport(
        value=result.value,
        kind=result.kind,
        n=result.n,
        m=result.m,
        mean=moments.mean,
        variance=moments.variance,
        z=z,
        p_two_sided=math.erfc(abs(z) * _SQRT_HALF),
        p_upper=0.5 * math.erfc(z * _SQRT_HALF),
        p_lower=0.5 * math.erfc(-z * _SQRT_HALF),
    )


def sigma_m_closed_form_large_m(kind, m: int) -> float:
    """Leading large-m form of the per-window variance coefficient.

    greenwood 4m^3/3, moran 1/(2m^2), entropy (m+5)/4.  These are leading
    orders only; scripts/sigma_table.py tabulates them against the exact
    coefficients, which they track to varying degrees at moderate m.
    """
    kind = resolve_kind(kind)
    if m < 1:
        raise ValueError(f"order must be >= 1, got {m}")
    if kind.name == "greenwood":
        return 4.0 * m**3 / 3.0
    if kind.name == "moran":
        return 1.0 / (2.0 * m * m)
    if kind.name == "entropy":
        return (m + 5.0) / 4.0
    raise UnsupportedKind(f"no large-m form for kind {kind.name!r}")


def exact_mean_correction(kind, n: int, m: int) -> float:
    """Exact value of E[statistic] - n E[per-window term] at finite n.

    Scaled overlapping m-spacings have Beta(m, n - m) marginals scaled by n,
    which gives closed finite-n means for the named kinds:

    * greenwood: -n m (m+1) / (n+1)          (limit -m(m+1))
    * moran:     n (ln n - psi(n))            (limit 1/2)
    * entropy:   n m (ln n - psi(n+1))        (limit -m/2)
    """
    kind = resolve_kind(kind)
    if not 1 <= m < n:
        raise ValueError(f"need 1 <= m < n, got m={m}, n={n}")
    if kind.name == "greenwood":
        return -n * m * (m + 1) / (n + 1)
    if kind.name == "moran":
        return n * (math.log(n) - digamma_int(n))
    if kind.name == "entropy":
        return n * m * (math.log(n) - digamma_int(n + 1))
    raise UnsupportedKind(f"no exact mean correction for kind {kind.name!r}")


def _as_tuple_function(h, m: int) -> TupleFunction:
    if isinstance(h, TupleFunction):
        if h.arity != m:
            raise ValueError(f"tuple function has arity {h.arity}, expected {m}")
        return h
    return resolve_kind(h).as_tuple_function(m)


def _finite_or_raise(hv: np.ndarray) -> None:
    if not np.isfinite(hv).all():
        k = int(np.flatnonzero(~np.isfinite(hv))[0])
        raise NonFiniteSample(f"statistic value at draw {k} is not finite")


def _mean_cov(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.mean((a - a.mean()) * (b - b.mean())))


def mean_correction(h, m: int, draws: int, seed: int, stream_id: int = 0) -> Estimate:
    """First-order correction to the statistic's null mean.

    Estimates half the covariance of h with (w - m) - (w - m)^2, where w is
    the total of an iid standard-exponential m-window, by plain Monte Carlo
    over independent windows.  ``h`` may be a StatisticKind (applied to the
    total) or a TupleFunction of arity m.
    """
    if draws < _MIN_MC_DRAWS:
        raise ValueError(f"draws must be >= {_MIN_MC_DRAWS}")
    tf = _as_tuple_function(h, m)
    x = SeededStream(seed, stream_id).exponentials(draws * m).reshape(draws, m)
    with np.errstate(all="ignore"):
        hv = tf.evaluate(x)
    _finite_or_raise(hv)
    dev = x.sum(axis=1) - m
    target = dev - dev * dev
    full = 0.5 * _mean_cov(hv, target)
    size = draws // DEFAULT_BATCHES
    batch_vals = [
        0.5 * _mean_cov(hv[i * size : (i + 1) * size], target[i * size : (i + 1) * size])
        for i in range(DEFAULT_BATCHES)
    ]
    return Estimate(full, batch_std_error(batch_vals))


def _holst_comparison(h, m: int, draws: int, seed: int) -> tuple[Estimate, Estimate, Estimate]:
    _, hv, w = stream_window_values(h, m, draws, seed)
    full = components(hv, w, m)
    batch = batched_components(hv, w, m)
    holst = Estimate(full.holst, batch_std_error([c.holst for c in batch]))
    corrected = Estimate(full.corrected, batch_std_error([c.corrected for c in batch]))
    difference = Estimate(full.holst - full.corrected,
                          batch_std_error([c.holst - c.corrected for c in batch]))
    return holst, corrected, difference


def holst_vs_corrected(h, m: int, draws: int, seed: int) -> tuple[Estimate, Estimate]:
    """Both per-window variance assemblies from one stationary stream.

    Returns (holst, corrected): the pooled cross-covariance form and the
    corrected form, each with a batch-means standard error.  The two use the
    same lag-covariance accumulators, so at m = 1 they coincide exactly; no
    ordering between them is asserted at any order.
    """
    if draws < _MIN_MC_DRAWS:
        raise ValueError(f"draws must be >= {_MIN_MC_DRAWS}")
    holst, corrected, _ = _holst_comparison(h, m, draws, seed)
    return holst, corrected


def estimate_general_moments(
    family: TupleFunctionFamily, n: int, m: int, replications: int, seed: int
) -> GeneralMoments:
    """Monte Carlo estimates of A, B, C and sigma2 for a summand family.

    Each replication draws n iid standard exponentials with circular
    extension, evaluates the family on all n windows, and accumulates
    per-position first and second moments; covariances are then taken across
    replications.  Standard errors are batch means over replications.
    """
    if len(family) != n:
        raise FamilyLengthMismatch(f"family has {len(family)} functions, need n={n}")
    if family.arity != m:
        raise ValueError(f"family arity {family.arity}, expected {m}")
    if not 1 <= m < n:
        raise ValueError(f"need 1 <= m < n, got m={m}, n={n}")
    if replications < _MIN_REPLICATIONS:
        raise ValueError(f"replications must be >= {_MIN_REPLICATIONS}")

    batches = DEFAULT_BATCHES
    size = replications // batches
    sizes = [size + 1 if b < replications - batches * size else size for b in range(batches)]

    sum_h = np.zeros((batches, n))
    sum_w = np.zeros((batches, n))
    sum_hw = np.zeros((batches, n))
    sum_hh = np.zeros((batches, m, n))

    rep = 0
    for b, count in enumerate(sizes):
        for _ in range(count):
            x = SeededStream(seed, rep).exponentials(n)
            ext = np.concatenate([x, x[: m - 1]]) if m > 1 else x
            windows = sliding_window_view(ext, m)
            with np.errstate(all="ignore"):
                hv = family.evaluate_all(windows)
            _finite_or_raise(hv)
            w = windows.sum(axis=1)
            sum_h[b] += hv
            sum_w[b] += w
            sum_hw[b] += hv * w
            for d in range(m):
                sum_hh[b, d] += hv * np.roll(hv, -d)
            rep += 1

    def assemble(sh, sw, shw, shh, count):
        mh = sh / count
        mw = sw / count
        a_val = float(np.sum(mh))
        b_val = float(np.mean(shw / count - mh * mw))
        c_total = 0.0
        for d in range(m):
            cov_d = shh[d] / count - mh * np.roll(mh, -d)
            total = float(np.sum(cov_d))
            c_total += total if d == 0 else 2.0 * total
        c_val = c_total / n
        return a_val, b_val, c_val, n * (c_val - b_val * b_val)

    full = assemble(sum_h.sum(axis=0), sum_w.sum(axis=0), sum_hw.sum(axis=0),
                    sum_hh.sum(axis=0), replications)
    per_batch = [assemble(sum_h[b], sum_w[b], sum_hw[b], sum_hh[b], sizes[b])
                 for b in range(batches)]
    ses = [batch_std_error([pb[i] for pb in per_batch]) for i in range(4)]
    return GeneralMoments(
        A=full[0], B=full[1], C=full[2], sigma2=full[3],
        se_A=ses[0], se_B=ses[1], se_C=ses[2], se_sigma2=ses[3],
        n=n, m=m, replications=replications, seed=seed,
    )


def clt_condition_ratio(h, n: int, m: int, r: float, draws: int, seed: int) -> float:
    """Monte Carlo value of the normal-limit moment condition ratio.

    With g = h - Eh - (x_0 - 1) cov(h, w) over exponential windows, the ratio
    is m^(r-1) E|g|^r / (n^((r-2)/2) sigma_m^r), which must vanish as n grows
    for asymptotic normality.  Returns 0 exactly when g is identically zero
    (constant and linear h), and inf when the variance degenerates while g
    does not.
    """
    if r <= 2.0:
        raise ValueError(f"the moment order must exceed 2, got {r}")
    if draws < _MIN_MC_DRAWS:
        raise ValueError(f"draws must be >= {_MIN_MC_DRAWS}")
    x, hv, w = stream_window_values(h, m, draws, seed)
    comp = components(hv, w, m)
    base_count = hv.size - (m - 1)
    g = hv[:base_count] - hv.mean() - (x[:base_count] - 1.0) * comp.b
    moment = float(np.mean(np.abs(g) ** r))
    if moment == 0.0:
        return 0.0
    if comp.corrected <= 0.0:
        return math.inf
    return (m ** (r - 1.0)) * moment / (n ** ((r - 2.0) / 2.0) * comp.corrected ** (r / 2.0))
