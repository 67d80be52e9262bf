"""Gaussian-kernel density estimation and standard-deviation estimators.

f_n(x) = (n a_n)^{-1} sum_i k((x_i - x)/a_n) with the standard normal
kernel and a power-law bandwidth a_n -> 0.  Three scale estimators for a
Gaussian window: inversion of the kernel density at the known mean,
inversion of the sign count (requires a known non-zero mean), and the
joint mean/sign-count form that needs neither parameter.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .distributions import SampleWindow
from .errors import DomainError, EstimateUndefinedError

__all__ = [
    "BandwidthRule",
    "BandwidthSchedule",
    "DEFAULT_SCHEDULE",
    "SigmaEstimateConfig",
    "kernel_density_at",
    "kernel_density_profile",
    "sigma_kernel_estimate",
    "sigma_signcount_trace",
    "sigma_signcount_estimate",
    "sigma_mean_signcount_trace",
    "sigma_mean_signcount_estimate",
    "sample_sd",
]

# cap on tail-window evaluation points for the kernel-inversion estimator;
# each point costs an O(n) kernel sum, so the full tail is evaluated only
# when it has at most this many indices
_SIGMA_EVAL_CAP = 2048


class BandwidthRule(enum.Enum):
    POWER_LAW = "power-law"


@dataclass(frozen=True)
class BandwidthSchedule:
    """a_n = scale_factor * n^(-exponent): positive, strictly decreasing to 0."""

    rule: BandwidthRule = BandwidthRule.POWER_LAW
    exponent: float = 0.2
    scale_factor: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.exponent < 1.0:
            raise DomainError(f"exponent must lie in (0,1), got {self.exponent}")
        if self.scale_factor <= 0.0:
            raise DomainError(f"scale_factor must be > 0, got {self.scale_factor}")

    def bandwidth(self, n: int) -> float:
        return self.scale_factor * float(n) ** (-self.exponent)


DEFAULT_SCHEDULE = BandwidthSchedule()


@dataclass(frozen=True)
class SigmaEstimateConfig:
    """Known mean, designated fallback scale sigma_0 > 0, and tail start n0."""

    known_mean: float
    fallback_sigma: float
    n0: int

    def __post_init__(self):
        if self.fallback_sigma <= 0:
            raise DomainError(f"fallback_sigma must be > 0, got {self.fallback_sigma}")
        if self.n0 < 1:
            raise DomainError(f"n0 must be >= 1, got {self.n0}")


def kernel_density_at(window: SampleWindow, x: float, schedule: BandwidthSchedule = DEFAULT_SCHEDULE) -> float:
    """Kernel density of the full window at a single point."""
    h = schedule.bandwidth(len(window))
    return float(kernels.kde_eval(window.values, np.asarray([float(x)]), h)[0])


def kernel_density_profile(window: SampleWindow, grid, schedule: BandwidthSchedule = DEFAULT_SCHEDULE) -> np.ndarray:
    """Kernel density of the full window on a grid of points."""
    h = schedule.bandwidth(len(window))
    return np.asarray(kernels.kde_eval(window.values, np.asarray(grid, dtype=float), h))


def _check_n0(n0: int, n: int) -> None:
    if not 1 <= n0 <= n:
        raise DomainError(f"n0={n0} outside 1..{n}")


def _tail_sup_with_fallback(tail_values: np.ndarray, fallback_sigma: float, what: str) -> float:
    finite = tail_values[np.isfinite(tail_values)]
    if finite.size == 0:
        raise EstimateUndefinedError(f"{what} is undefined at every index of the tail window")
    sup = float(finite.max())
    if sup > 0.0 and sup != fallback_sigma:
        return sup
    return fallback_sigma


def _sigma_eval_indices(n0: int, n: int) -> np.ndarray:
    """Deterministic 1-based evaluation grid over the tail window [n0, n].

    Every index when the window is small; otherwise a uniform stride that
    always includes both endpoints.  Each evaluation costs an O(n) kernel
    sum, which is why the full window is not always affordable.
    """
    count = n - n0 + 1
    if count <= _SIGMA_EVAL_CAP:
        return np.arange(n0, n + 1, dtype=np.int64)
    idx = np.linspace(n0, n, _SIGMA_EVAL_CAP).round().astype(np.int64)
    return np.unique(idx)


def sigma_kernel_estimate(window: SampleWindow, cfg: SigmaEstimateConfig,
                          schedule: BandwidthSchedule = DEFAULT_SCHEDULE) -> float:
    """Scale estimate by inverting the kernel density at the known mean.

    Per-index value 1/(sqrt(2 pi) f_m(a)); the tail supremum from cfg.n0 is
    returned unless it is non-positive or equals the fallback scale, in
    which case the fallback is returned.  Indices whose kernel sum
    underflows to zero are skipped; if every tail index is skipped the
    estimate is undefined.
    """
    n = len(window)
    _check_n0(cfg.n0, n)
    idx = _sigma_eval_indices(cfg.n0, n)
    vals = np.asarray(kernels.sigma_kernel_trace(
        window.values, cfg.known_mean, idx, schedule.exponent, schedule.scale_factor))
    return _tail_sup_with_fallback(vals, cfg.fallback_sigma, "kernel density at the mean")


def _sign_fraction_quantiles(window: SampleWindow) -> np.ndarray:
    """Phi^{-1}(#{x_i <= 0}/n) per prefix length; NaN where the fraction is 0 or 1."""
    n = len(window)
    counts = kernels.running_le_count(window.values, 0.0)
    u = counts / np.arange(1, n + 1)
    return np.asarray(kernels.gauss_quantile(u))  # NaN outside (0,1)


def sigma_signcount_trace(window: SampleWindow, known_mean: float) -> np.ndarray:
    """Per-n values -a / Phi^{-1}(#{x_i <= 0}/n); NaN where undefined.

    Undefined indices are those whose sign fraction is 0 or 1 (quantile
    diverges) or exactly 1/2 (division by zero).
    """
    q = _sign_fraction_quantiles(window)
    with np.errstate(divide="ignore", invalid="ignore"):
        vals = np.where(q != 0.0, -float(known_mean) / q, np.nan)
    return vals


def sigma_signcount_estimate(window: SampleWindow, cfg: SigmaEstimateConfig) -> float:
    """Scale estimate from the sign count and a known non-zero mean.

    Tail supremum from cfg.n0 of the per-n trace, skipping undefined
    indices, with the same positivity/fallback rule as the kernel form.
    """
    if cfg.known_mean == 0.0:
        raise DomainError("sign-count scale estimation requires a non-zero known mean")
    n = len(window)
    _check_n0(cfg.n0, n)
    vals = sigma_signcount_trace(window, cfg.known_mean)[cfg.n0 - 1:]
    return _tail_sup_with_fallback(vals, cfg.fallback_sigma, "sign-count scale trace")


def sigma_mean_signcount_trace(window: SampleWindow) -> np.ndarray:
    """Per-n values -mean_n / Phi^{-1}(#{x_i <= 0}/n); NaN where undefined.

    Uses the running mean in place of a known mean, so both parameters may
    be unknown.
    """
    n = len(window)
    q = _sign_fraction_quantiles(window)
    means = kernels.running_sum(window.values) / np.arange(1, n + 1)
    with np.errstate(divide="ignore", invalid="ignore"):
        vals = np.where(q != 0.0, -means / q, np.nan)
    return vals


def sigma_mean_signcount_estimate(window: SampleWindow, cfg: SigmaEstimateConfig) -> float:
    """Scale estimate from the running mean and sign count (mean unknown).

    cfg.known_mean is deliberately unused; tail supremum and fallback as in
    the sign-count form.
    """
    n = len(window)
    _check_n0(cfg.n0, n)
    vals = sigma_mean_signcount_trace(window)[cfg.n0 - 1:]
    return _tail_sup_with_fallback(vals, cfg.fallback_sigma, "mean/sign-count scale trace")


def sample_sd(window: SampleWindow, corrected: bool = False) -> float:
    """Square root of the (optionally corrected) sample variance.

    Two-pass computation with exactly rounded summation in both passes.
    """
    n = len(window)
    if corrected and n < 2:
        raise DomainError("corrected sample SD needs a window of length >= 2")
    mean = math.fsum(window.values) / n
    ss = math.fsum((v - mean) ** 2 for v in window.values.tolist())
    return math.sqrt(ss / (n - 1 if corrected else n))
