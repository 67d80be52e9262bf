# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled numerical kernels (see kernels_py for the reference semantics)."""

from libc.math cimport erfc, exp, log, sqrt, pow, NAN

import numpy as np

NAME = "cython"

cdef double SQRT2 = 1.4142135623730951
cdef double SQRT_2PI = 2.5066282746310002

# Acklam's rational approximation coefficients
cdef double A0 = -3.969683028665376e+01, A1 = 2.209460984245205e+02
cdef double A2 = -2.759285104469687e+02, A3 = 1.383577518672690e+02
cdef double A4 = -3.066479806614716e+01, A5 = 2.506628277459239e+00
cdef double B0 = -5.447609879822406e+01, B1 = 1.615858368580409e+02
cdef double B2 = -1.556989798598866e+02, B3 = 6.680131188771972e+01
cdef double B4 = -1.328068155288572e+01
cdef double C0 = -7.784894002430293e-03, C1 = -3.223964580411365e-01
cdef double C2 = -2.400758277161838e+00, C3 = -2.549732539343734e+00
cdef double C4 = 4.374664141464968e+00, C5 = 2.938163982698783e+00
cdef double D0 = 7.784695709041462e-03, D1 = 3.224671290700398e-01
cdef double D2 = 2.445134137142996e+00, D3 = 3.754408661907416e+00
cdef double P_LOW = 0.02425


cdef inline double _acklam_half(double u) noexcept nogil:
    cdef double q, r
    if u < P_LOW:
        q = sqrt(-2.0 * log(u))
        return (((((C0 * q + C1) * q + C2) * q + C3) * q + C4) * q + C5) / \
               ((((D0 * q + D1) * q + D2) * q + D3) * q + 1.0)
    q = u - 0.5
    r = q * q
    return q * (((((A0 * r + A1) * r + A2) * r + A3) * r + A4) * r + A5) / \
           (((((B0 * r + B1) * r + B2) * r + B3) * r + B4) * r + 1.0)


cdef inline double _gauss_quantile_scalar(double u) noexcept nogil:
    cdef double half, z, resid
    cdef bint upper
    if not (u > 0.0 and u < 1.0):
        return NAN
    upper = u > 0.5
    half = 1.0 - u if upper else u
    z = _acklam_half(half)
    if 0.5 * z * z < 700.0:  # 1/phi(z) overflows past |z| ~ 37.4
        resid = 0.5 * erfc(-z / SQRT2) - half
        z -= resid * SQRT_2PI * exp(0.5 * z * z)
    return -z if upper else z


def gauss_cdf(x):
    cdef const double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef Py_ssize_t i, n = xv.shape[0]
    out = np.empty(n)
    cdef double[::1] ov = out
    for i in range(n):
        ov[i] = 0.5 * erfc(-xv[i] / SQRT2)
    return out


def gauss_density(x):
    cdef const double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef Py_ssize_t i, n = xv.shape[0]
    out = np.empty(n)
    cdef double[::1] ov = out
    for i in range(n):
        ov[i] = exp(-0.5 * xv[i] * xv[i]) / SQRT_2PI
    return out


def gauss_quantile(u):
    cdef const double[::1] uv = np.ascontiguousarray(u, dtype=np.float64)
    cdef Py_ssize_t i, n = uv.shape[0]
    out = np.empty(n)
    cdef double[::1] ov = out
    for i in range(n):
        ov[i] = _gauss_quantile_scalar(uv[i])
    return out


def running_le_count(values, double threshold):
    cdef const double[::1] v = np.ascontiguousarray(values, dtype=np.float64)
    cdef Py_ssize_t i, n = v.shape[0]
    out = np.empty(n, dtype=np.int64)
    cdef long long[::1] ov = out
    cdef long long c = 0
    for i in range(n):
        if v[i] <= threshold:
            c += 1
        ov[i] = c
    return out


def running_sum(values):
    cdef const double[::1] v = np.ascontiguousarray(values, dtype=np.float64)
    cdef Py_ssize_t i, n = v.shape[0]
    out = np.empty(n)
    cdef double[::1] ov = out
    cdef double s = 0.0
    for i in range(n):
        s += v[i]
        ov[i] = s
    return out


def kde_eval(samples, grid, double bandwidth):
    cdef const double[::1] xs = np.ascontiguousarray(samples, dtype=np.float64)
    cdef const double[::1] gv = np.ascontiguousarray(grid, dtype=np.float64)
    cdef Py_ssize_t i, j, n = xs.shape[0], m = gv.shape[0]
    out = np.empty(m)
    cdef double[::1] ov = out
    cdef double s, t, g, norm = n * bandwidth * SQRT_2PI
    with nogil:
        for j in range(m):
            g = gv[j]
            s = 0.0
            for i in range(n):
                t = (xs[i] - g) / bandwidth
                s += exp(-0.5 * t * t)
            ov[j] = s / norm
    return out


def sigma_kernel_trace(samples, double center, indices, double exponent, double scale):
    cdef const double[::1] xs = np.ascontiguousarray(samples, dtype=np.float64)
    cdef const long long[::1] idx = np.ascontiguousarray(indices, dtype=np.int64)
    cdef Py_ssize_t i, j, m = idx.shape[0]
    cdef long long n
    out = np.empty(m)
    cdef double[::1] ov = out
    d2_arr = np.empty(xs.shape[0])
    cdef double[::1] d2 = d2_arr
    cdef double h, s, inv2h2
    for i in range(xs.shape[0]):
        d2[i] = (xs[i] - center) * (xs[i] - center)
    with nogil:
        for j in range(m):
            n = idx[j]
            h = scale * pow(<double> n, -exponent)
            inv2h2 = -1.0 / (2.0 * h * h)
            s = 0.0
            for i in range(n):
                s += exp(d2[i] * inv2h2)
            ov[j] = (n * h) / s if s > 0.0 else NAN
    return out
