"""Sum-statistics over m-tuples of scaled spacings.

Each statistic applies a function to windows of the scaled simple spacings
(or to the scaled window totals) and reduces with exact compensated
summation, so a fixed sample always yields a bit-identical value regardless
of length.

Variants
--------
Z : circular sum of a tuple function over all n windows of simple spacings.
V : circular sum of a scalar function of the overlapping m-spacings.
W : like V but restricted to the n - m windows that do not wrap.
Q : sum over the floor(n/m) disjoint blocks.
R : circular sum with a per-position family of tuple functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, ClassVar, Sequence

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .errors import (
    DomainViolation,
    FamilyLengthMismatch,
    OrderTooLarge,
    UnsupportedKind,
    ZeroSpacing,
)
from .spacings import CircularSample, SpacingScheme, m_spacings, scaled_values


@dataclass(frozen=True)
class TupleFunction:
    """A real function of an m-tuple of nonnegative reals.

    ``fn`` receives the m window coordinates as positional scalars; when
    ``vectorized`` is set it instead receives the whole (count, m) window
    matrix and must return one value per row.  ``requires_positive`` declares
    that every coordinate must be strictly positive (logarithm-style
    domains); violations are reported with the window index.
    """

    fn: Callable
    arity: int
    vectorized: bool = False
    requires_positive: bool = False
    name: str = "custom"

    def __post_init__(self):
        if self.arity < 1:
            raise ValueError(f"arity must be >= 1, got {self.arity}")

    def evaluate(self, windows: np.ndarray) -> np.ndarray:
        """Apply to every row of a (count, arity) window matrix."""
        count = windows.shape[0]
        if self.vectorized:
            out = np.asarray(self.fn(windows), dtype=np.float64).reshape(count)
        else:
            out = np.fromiter(
                (float(self.fn(*row)) for row in windows),
                dtype=np.float64,
                count=count,
            )
        return out


@dataclass(frozen=True)
class TupleFunctionFamily:
    """An indexed, fixed-arity collection of tuple functions.

    Evaluation groups positions that share a function object, so families
    built from a handful of distinct functions evaluate vectorized.
    """

    functions: tuple[TupleFunction, ...]
    _groups: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        fns = tuple(self.functions)
        if not fns:
            raise FamilyLengthMismatch("family must contain at least one function")
        arity = fns[0].arity
        if any(f.arity != arity for f in fns):
            raise ValueError("family members must share one arity")
        groups: dict[int, list[int]] = {}
        for k, f in enumerate(fns):
            groups.setdefault(id(f), []).append(k)
        frozen = tuple(
            (fns[rows[0]], np.asarray(rows, dtype=np.intp)) for rows in groups.values()
        )
        object.__setattr__(self, "functions", fns)
        object.__setattr__(self, "_groups", frozen)

    def __len__(self) -> int:
        return len(self.functions)

    @property
    def arity(self) -> int:
        return self.functions[0].arity

    @classmethod
    def constant(cls, h: TupleFunction, n: int) -> "TupleFunctionFamily":
        """The symmetric family using the same function at every position."""
        return cls((h,) * n)

    def evaluate_all(self, windows: np.ndarray) -> np.ndarray:
        """Value of function k on window k, for all k at once."""
        out = np.empty(len(self.functions), dtype=np.float64)
        for fn, rows in self._groups:
            out[rows] = fn.evaluate(windows[rows])
        return out


def _xlogx(u: np.ndarray) -> np.ndarray:
    u = np.asarray(u, dtype=np.float64)
    out = np.zeros_like(u)
    pos = u > 0.0
    out[pos] = u[pos] * np.log(u[pos])
    return out


@dataclass(frozen=True)
class StatisticKind:
    """A named scalar function applied to scaled window totals."""

    name: str
    sum_fn: Callable[[np.ndarray], np.ndarray]
    requires_positive: bool = False

    CLOSED_FORM_NAMES: ClassVar[tuple[str, ...]] = ("greenwood", "moran", "entropy")

    @property
    def has_closed_form(self) -> bool:
        return self.name in self.CLOSED_FORM_NAMES

    def as_tuple_function(self, m: int) -> TupleFunction:
        """The order-m tuple function that applies ``sum_fn`` to the row total."""
        sum_fn = self.sum_fn
        return TupleFunction(
            fn=lambda windows: sum_fn(windows.sum(axis=1)),
            arity=m,
            vectorized=True,
            name=self.name,
        )


#: Squared spacings; large values flag clustering.
GREENWOOD = StatisticKind("greenwood", np.square)
#: Log spacings; undefined on ties.
MORAN = StatisticKind("moran", np.log, requires_positive=True)
#: x log x with the 0 log 0 = 0 convention.
ENTROPY = StatisticKind("entropy", _xlogx)

_KINDS_BY_NAME = {k.name: k for k in (GREENWOOD, MORAN, ENTROPY)}


def custom_sum(fn: Callable, name: str = "custom-sum", requires_positive: bool = False) -> StatisticKind:
    """A user-supplied scalar function of the scaled window total."""
    return StatisticKind(name=name, sum_fn=fn, requires_positive=requires_positive)


def resolve_kind(kind) -> StatisticKind:
    """Accept a StatisticKind or one of the registered names."""
    if isinstance(kind, StatisticKind):
        return kind
    try:
        return _KINDS_BY_NAME[str(kind).lower()]
    except KeyError:
        raise UnsupportedKind(f"unknown statistic kind {kind!r}; "
                              f"known: {sorted(_KINDS_BY_NAME)}") from None


@dataclass(frozen=True)
class StatisticResult:
    """One evaluated statistic with the context needed to standardize it."""

    value: float
    kind: str
    n: int
    m: int
    variant: str
    summand_count: int


def _require_positive(x: np.ndarray, kind: StatisticKind) -> None:
    if kind.requires_positive and not (x > 0.0).all():
        raise ZeroSpacing(int(np.flatnonzero(x <= 0.0)[0]))


def _apply_sum_fn(kind: StatisticKind, x: np.ndarray) -> np.ndarray:
    with np.errstate(all="ignore"):
        hv = np.asarray(kind.sum_fn(x), dtype=np.float64)
    bad = ~np.isfinite(hv)
    if bad.any():
        k = int(np.flatnonzero(bad)[0])
        raise DomainViolation(k, f"{kind.name} returned {hv[k]!r} at value {x[k]!r}")
    return hv


def _scaled_windows(sample: CircularSample, m: int) -> np.ndarray:
    """(n, m) matrix of scaled simple spacings, row k starting at arc k."""
    s = scaled_values(m_spacings(sample, SpacingScheme.simple()))
    ext = np.concatenate([s, s[: m - 1]]) if m > 1 else s
    return sliding_window_view(ext, m)


def _evaluate_windows(fn_or_family, windows: np.ndarray) -> np.ndarray:
    if isinstance(fn_or_family, TupleFunctionFamily):
        evaluate = fn_or_family.evaluate_all
        requires_positive = any(f.requires_positive for f in fn_or_family.functions)
    else:
        evaluate = fn_or_family.evaluate
        requires_positive = fn_or_family.requires_positive
    if requires_positive:
        mins = windows.min(axis=1)
        if not (mins > 0.0).all():
            raise DomainViolation(int(np.flatnonzero(mins <= 0.0)[0]),
                                  "window has a non-positive coordinate")
    with np.errstate(all="ignore"):
        hv = evaluate(windows)
    bad = ~np.isfinite(hv)
    if bad.any():
        k = int(np.flatnonzero(bad)[0])
        raise DomainViolation(k, f"value {hv[k]!r}")
    return hv


def statistic_Z(sample: CircularSample, m: int, h: TupleFunction) -> StatisticResult:
    """Circular tuple-function sum over all n windows of scaled simple spacings."""
    if h.arity != m:
        raise ValueError(f"tuple function has arity {h.arity}, expected {m}")
    if m >= sample.arc_count:
        raise OrderTooLarge(f"order {m} needs more than {m} arcs, sample has {sample.arc_count}")
    windows = _scaled_windows(sample, m)
    hv = _evaluate_windows(h, windows)
    return StatisticResult(value=math.fsum(hv), kind=h.name, n=sample.arc_count,
                           m=m, variant="Z", summand_count=windows.shape[0])


def statistic_V(sample: CircularSample, m: int, kind) -> StatisticResult:
    """Circular sum of a scalar function of the scaled overlapping m-spacings."""
    kind = resolve_kind(kind)
    x = scaled_values(m_spacings(sample, SpacingScheme.overlapping(m)))
    _require_positive(x, kind)
    hv = _apply_sum_fn(kind, x)
    return StatisticResult(value=math.fsum(hv), kind=kind.name, n=sample.arc_count,
                           m=m, variant="V", summand_count=x.size)


def statistic_W(sample: CircularSample, m: int, kind) -> StatisticResult:
    """Line version of V: only the n - m windows that do not wrap past 1."""
    kind = resolve_kind(kind)
    x = scaled_values(m_spacings(sample, SpacingScheme.overlapping(m)))
    n = sample.arc_count
    y = x[: n - m]
    _require_positive(y, kind)
    hv = _apply_sum_fn(kind, y)
    return StatisticResult(value=math.fsum(hv), kind=kind.name, n=n,
                           m=m, variant="W", summand_count=y.size)


def statistic_Q(sample: CircularSample, m: int, kind) -> StatisticResult:
    """Sum of a scalar function of the scaled disjoint m-spacings."""
    kind = resolve_kind(kind)
    x = scaled_values(m_spacings(sample, SpacingScheme.disjoint(m)))
    _require_positive(x, kind)
    hv = _apply_sum_fn(kind, x)
    return StatisticResult(value=math.fsum(hv), kind=kind.name, n=sample.arc_count,
                           m=m, variant="Q", summand_count=x.size)


def statistic_R(sample: CircularSample, m: int, family: TupleFunctionFamily) -> StatisticResult:
    """Circular sum with one tuple function per window position."""
    n = sample.arc_count
    if len(family) != n:
        raise FamilyLengthMismatch(f"family has {len(family)} functions, sample has {n} arcs")
    if family.arity != m:
        raise ValueError(f"family arity {family.arity}, expected {m}")
    if m >= n:
        raise OrderTooLarge(f"order {m} needs more than {m} arcs, sample has {n}")
    windows = _scaled_windows(sample, m)
    hv = _evaluate_windows(family, windows)
    return StatisticResult(value=math.fsum(hv), kind="family", n=n,
                           m=m, variant="R", summand_count=n)
