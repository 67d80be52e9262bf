"""Finite-sample estimators of a location parameter / distribution value.

The family: the sign-count estimator -F^{-1}(#{x_i <= 0}/n) for the useful
signal in the model x_k = theta + noise_k; the empirical-CDF-at-a-point
estimator #{x_i <= x*}/n; the sample mean; tail extrema of the running
estimator trace (finite truncations of limsup/liminf); and the strong
fractional-mean estimator with its order-dependent binary-shadow fallback.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ._backend import kernels
from .distributions import DistributionSpec, SampleWindow, quantile
from .errors import DomainError, EstimateUndefinedError

__all__ = [
    "ProbePoint",
    "FallbackParam",
    "EstimatorTrace",
    "Limit",
    "sign_count_estimate",
    "cdf_point_estimate",
    "sample_mean",
    "trace",
    "tail_extrema",
    "objective_cdf_estimate",
    "strong_fractional_estimate",
    "binary_shadow",
]


@dataclass(frozen=True)
class ProbePoint:
    """The fixed point x* at which the empirical CDF is read off."""

    x_star: float


@dataclass(frozen=True)
class FallbackParam:
    """The designated parameter theta_0 returned when a limit leaves the set."""

    theta0: float


@dataclass(frozen=True)
class EstimatorTrace:
    """Running estimator values; values[k-1] is computed from x_1..x_k."""

    values: np.ndarray

    def __len__(self) -> int:
        return self.values.size


class Limit(enum.Enum):
    UPPER_LIMIT = "upper"
    LOWER_LIMIT = "lower"


def _probe_value(probe) -> float:
    return float(probe.x_star) if isinstance(probe, ProbePoint) else float(probe)


def _fallback_value(fallback) -> float:
    return float(fallback.theta0) if isinstance(fallback, FallbackParam) else float(fallback)


def sign_count_estimate(window: SampleWindow, noise_cdf: DistributionSpec) -> float:
    """-F^{-1}(#{x_i <= 0}/n): location estimate under noise with CDF F.

    Raises EstimateUndefinedError when the sign fraction is 0 or 1 (the
    quantile diverges there); the caller decides whether to enlarge n.
    """
    n = len(window)
    frac = int(np.count_nonzero(window.values <= 0.0)) / n
    if frac == 0.0 or frac == 1.0:
        raise EstimateUndefinedError(
            f"sign fraction {frac:.0f} of n={n}: quantile diverges"
        )
    return -quantile(noise_cdf, frac)


def cdf_point_estimate(window: SampleWindow, probe) -> float:
    """Empirical CDF #{x_i <= x*}/n; estimates F(x*) of the source measure."""
    x_star = _probe_value(probe)
    return int(np.count_nonzero(window.values <= x_star)) / len(window)


def sample_mean(window: SampleWindow) -> float:
    """Arithmetic mean with exactly rounded (compensated) summation."""
    return math.fsum(window.values) / len(window)


def trace(window: SampleWindow, probe) -> EstimatorTrace:
    """Running empirical CDF at x*, one value per prefix length, in O(N)."""
    x_star = _probe_value(probe)
    counts = kernels.running_le_count(window.values, x_star)
    vals = counts / np.arange(1, len(window) + 1)
    vals.flags.writeable = False
    return EstimatorTrace(vals)


def tail_extrema(est_trace: EstimatorTrace, n0: int) -> tuple[float, float]:
    """(max, min) of the trace over prefix lengths n0..N.

    As N grows with n0 these bracket the limsup/liminf of the running
    estimator; for an equidistributed source both converge to the same
    limit.
    """
    n = len(est_trace)
    if not 1 <= n0 <= n:
        raise DomainError(f"n0={n0} outside 1..{n}")
    seg = est_trace.values[n0 - 1:]
    return float(seg.max()), float(seg.min())


def objective_cdf_estimate(window: SampleWindow, probe,
                           param_set_contains: Callable[[float], bool],
                           fallback, n0: int,
                           which: Limit = Limit.UPPER_LIMIT) -> float:
    """Tail-extremum estimate with the designated-parameter fallback.

    Returns the tail supremum (UPPER_LIMIT) or infimum (LOWER_LIMIT) of the
    running empirical CDF at x*, provided it lies in the parameter set and
    differs from the fallback theta_0; otherwise returns theta_0.
    """
    theta0 = _fallback_value(fallback)
    sup_tail, inf_tail = tail_extrema(trace(window, probe), n0)
    v = sup_tail if which is Limit.UPPER_LIMIT else inf_tail
    if param_set_contains(v) and v != theta0:
        return v
    return theta0


def _running_means(values: np.ndarray) -> np.ndarray:
    return kernels.running_sum(values) / np.arange(1, values.size + 1)


def _diagnose_limit(means: np.ndarray, tol: float) -> tuple[bool, float]:
    """Deterministic finite-window proxy for 'the running means converge'.

    Convergence is declared iff every running mean over the second half of
    the window stays within tol of the final one; the final running mean is
    then taken as the limit.
    """
    half = math.ceil(means.size / 2)
    dev = float(np.abs(means[half - 1:] - means[-1]).max())
    return dev <= tol, float(means[-1])


def strong_fractional_estimate(window: SampleWindow, convergence_tol: float,
                               shadow_depth: int) -> float:
    """Fractional part of the Cesaro limit, with a binary-shadow fallback.

    If the running means are diagnosed convergent with limit L: returns 1
    when |L - 1| <= convergence_tol, else L - floor(L).  A non-convergent
    window falls back to the order-dependent binary shadow (depth clamped
    to the window length so this function is total).
    """
    n = len(window)
    if n < 4:
        raise DomainError(f"need a window of length >= 4, got {n}")
    if convergence_tol <= 0:
        raise DomainError("convergence_tol must be > 0")
    if shadow_depth < 1:
        raise DomainError("shadow_depth must be >= 1")
    converged, limit = _diagnose_limit(_running_means(window.values), convergence_tol)
    if converged:
        if abs(limit - 1.0) <= convergence_tol:
            return 1.0
        return limit - math.floor(limit)
    return binary_shadow(window, min(shadow_depth, n))


def binary_shadow(window: SampleWindow, depth: int) -> float:
    """Sum of indicator(x_k > 0) / 2^k over k = 1..depth.

    Order-dependent by construction; with depth <= 53 every partial sum is
    an exact dyadic double.
    """
    n = len(window)
    if not 1 <= depth <= n:
        raise DomainError(f"depth={depth} outside 1..{n}")
    vals = window.values
    total = 0.0
    for k in range(1, depth + 1):
        if vals[k - 1] > 0.0:
            total += math.ldexp(1.0, -k)
    return total
