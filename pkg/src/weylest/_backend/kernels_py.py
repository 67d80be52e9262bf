"""Pure-NumPy implementations of the hot numerical kernels.

Mirror of the compiled module ``_kernels``; both expose the same functions
with identical semantics so the package works without a C toolchain.  All
array arguments are 1-D float64.
"""

from __future__ import annotations

import numpy as np
from scipy.special import erfc

NAME = "python"

_SQRT2 = np.sqrt(2.0)
_SQRT_2PI = np.sqrt(2.0 * np.pi)

# Acklam's rational approximation to the standard normal quantile
# (|error| < 1.15e-9 on (0,1)), refined below by one Newton step.
_A = (-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
      1.383577518672690e+02, -3.066479806614716e+01, 2.506628277459239e+00)
_B = (-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
      6.680131188771972e+01, -1.328068155288572e+01)
_C = (-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
      -2.549732539343734e+00, 4.374664141464968e+00, 2.938163982698783e+00)
_D = (7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
      3.754408661907416e+00)
_P_LOW = 0.02425


def gauss_cdf(x: np.ndarray) -> np.ndarray:
    """Standard normal CDF via the complementary error function."""
    x = np.asarray(x, dtype=float)
    return 0.5 * erfc(-x / _SQRT2)


def gauss_density(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return np.exp(-0.5 * x * x) / _SQRT_2PI


def _acklam_half(u: np.ndarray) -> np.ndarray:
    """Rational approximation for u in (0, 0.5]."""
    z = np.empty_like(u)
    tail = u < _P_LOW
    if np.any(tail):
        q = np.sqrt(-2.0 * np.log(u[tail]))
        z[tail] = (((((_C[0] * q + _C[1]) * q + _C[2]) * q + _C[3]) * q + _C[4]) * q + _C[5]) / \
                  ((((_D[0] * q + _D[1]) * q + _D[2]) * q + _D[3]) * q + 1.0)
    mid = ~tail
    if np.any(mid):
        q = u[mid] - 0.5
        r = q * q
        z[mid] = q * (((((_A[0] * r + _A[1]) * r + _A[2]) * r + _A[3]) * r + _A[4]) * r + _A[5]) / \
                 (((((_B[0] * r + _B[1]) * r + _B[2]) * r + _B[3]) * r + _B[4]) * r + 1.0)
    return z


def gauss_quantile(u: np.ndarray) -> np.ndarray:
    """Standard normal quantile; NaN outside (0, 1).

    Computed on the lower half (upper half by symmetry, so the exact
    identity q(1-u) = -q(u) holds), then one Newton step against the erfc
    CDF pushes the error to a few ulp.
    """
    u = np.asarray(u, dtype=float)
    out = np.full(u.shape, np.nan)
    ok = (u > 0.0) & (u < 1.0)
    if not np.any(ok):
        return out
    uu = u[ok]
    upper = uu > 0.5
    half = np.where(upper, 1.0 - uu, uu)
    z = _acklam_half(half)
    # Newton: z -= (Phi(z) - u) / phi(z); z <= 0 here so erfc(-z/sqrt2) is
    # evaluated on the non-cancelling side.  1/phi(z) overflows beyond
    # |z| ~ 37.4 (u below ~1e-305), where the raw approximation stands.
    apply = 0.5 * z * z < 700.0
    resid = 0.5 * erfc(-z[apply] / _SQRT2) - half[apply]
    z[apply] -= resid * _SQRT_2PI * np.exp(0.5 * z[apply] * z[apply])
    out[ok] = np.where(upper, -z, z)
    return out


def running_le_count(values: np.ndarray, threshold: float) -> np.ndarray:
    """Cumulative count of values[:k] <= threshold, k = 1..n (int64)."""
    return np.cumsum(np.asarray(values, dtype=float) <= threshold, dtype=np.int64)


def running_sum(values: np.ndarray) -> np.ndarray:
    """Sequential cumulative sum (same associativity as the compiled loop)."""
    return np.cumsum(np.asarray(values, dtype=float))


def kde_eval(samples: np.ndarray, grid: np.ndarray, bandwidth: float) -> np.ndarray:
    """Gaussian-kernel density of the full sample at each grid point."""
    samples = np.asarray(samples, dtype=float)
    grid = np.asarray(grid, dtype=float)
    n = samples.size
    out = np.empty(grid.size)
    for i, g in enumerate(grid):
        t = (samples - g) / bandwidth
        out[i] = np.exp(-0.5 * t * t).sum() / (n * bandwidth * _SQRT_2PI)
    return out


def sigma_kernel_trace(samples: np.ndarray, center: float, indices: np.ndarray,
                       exponent: float, scale: float) -> np.ndarray:
    """Kernel-inversion scale trace n*h_n / sum_i exp(-(x_i-a)^2 / (2 h_n^2)).

    Evaluated at the 1-based prefix lengths in ``indices`` with bandwidth
    h_n = scale * n**(-exponent); NaN where the kernel sum underflows to 0.
    """
    samples = np.asarray(samples, dtype=float)
    d2 = (samples - center) ** 2
    out = np.empty(len(indices))
    for j, n in enumerate(np.asarray(indices, dtype=np.int64)):
        h = scale * float(n) ** (-exponent)
        s = np.exp(d2[:n] * (-1.0 / (2.0 * h * h))).sum()
        out[j] = (n * h) / s if s > 0.0 else np.nan
    return out
