"""Deterministic equidistributed sequences on (0, 1) from fractional parts.

The sequence {n*alpha} (fractional part of integer multiples of a fixed
irrational alpha) is uniformly distributed on the unit interval.  Each
supported alpha is shipped as a 1088-bit fixed-point constant, so n*alpha
is computed in exact integer arithmetic and only the final conversion to a
Python float rounds.  The result is therefore the correctly rounded double
for every index up to astronomically large n (the integer tail left after
the 53 kept bits exceeds 1000 bits), independently of how the platform's
libm would accumulate error.
"""

from __future__ import annotations

import enum
import math
import threading
from functools import lru_cache

import numpy as np

from .errors import DomainError, PrecisionError

__all__ = [
    "IrrationalId",
    "weyl_term",
    "weyl_prefix",
    "discrepancy_fraction",
    "FRAC_BITS",
]

# Number of fractional bits in the shipped constants.  53 + bit_length(n)
# of them are consumed by index n, so doubles stay exact to n ~ 2^1000.
FRAC_BITS = 1088

# frac(pi), frac(sqrt(2)), frac((1+sqrt(5))/2) * 2^1088, generated offline
# with 60+ guard digits and frozen here as hex.
_PI_FRAC_HEX = (
    "243f6a8885a308d313198a2e03707344a4093822299f31d0082efa98ec4e6c89"
    "452821e638d01377be5466cf34e90c6cc0ac29b7c97c50dd3f84d5b5b5470917"
    "9216d5d98979fb1bd1310ba698dfb5ac2ffd72dbd01adfb7b8e1afed6a267e96"
    "ba7c9045f12c7f9924a19947b3916cf70801f2e2858efc16636920d871574e69"
    "a458fea3f4933d7e"
)
_SQRT2_FRAC_HEX = (
    "6a09e667f3bcc908b2fb1366ea957d3e3adec17512775099da2f590b0667322a"
    "95f90608757145875163fcdfb907b6721ee950bc8738f694f0090e6c7bf44ed1"
    "a4405d0e855e3e9ca60b38c0237866f7956379222d108b148c1578e45ef89c67"
    "8dab5147176fd3b99654c68663e7909bea5e241f06dcb05dd549411320819495"
    "0272956db1fa1dfb"
)
_GOLDEN_FRAC_HEX = (
    "9e3779b97f4a7c15f39cc0605cedc8341082276bf3a27251f86c6a11d0c18e95"
    "2767f0b153d27b7f0347045b5bf1827f01886f0928403002c1d64ba40f335e36"
    "f06ad7ae9717877e85839d6effbd7dc664d325d1c5371682cadd0cccfdffbbe1"
    "626e33b8d04b4331bbf73c790d94f79d471c4ab3ed3d82a5fec507705e4ae6e5"
    "e73a9b91f3aa4db2"
)


class IrrationalId(enum.Enum):
    """Identifier of a fixed irrational multiplier."""

    PI = "pi"
    SQRT2 = "sqrt2"
    GOLDEN_RATIO = "phi"


_FRAC_TABLE = {
    IrrationalId.PI: int(_PI_FRAC_HEX, 16),
    IrrationalId.SQRT2: int(_SQRT2_FRAC_HEX, 16),
    IrrationalId.GOLDEN_RATIO: int(_GOLDEN_FRAC_HEX, 16),
}

_MASK = (1 << FRAC_BITS) - 1
_DEN = 1 << FRAC_BITS

# largest double below 1.0; {n*alpha} = 0 or 1 never occurs for irrational
# alpha, but round-to-nearest of a value inside (1 - 2^-54, 1) would yield
# 1.0, so the conversion clamps to keep the documented codomain [0, 1)
_BELOW_ONE = math.nextafter(1.0, 0.0)


def _check_precision(n: int, precision_bits: int) -> None:
    need = 64 + n.bit_length()
    if precision_bits < need:
        raise PrecisionError(
            f"precision_bits={precision_bits} < {need} (= 64 + bit_length(n));"
            f" the fractional part of {n}*alpha may be wrong in a double"
        )
    if need > FRAC_BITS:
        raise PrecisionError(
            f"n={n} exhausts the shipped {FRAC_BITS}-bit constant table"
        )


def _to_unit(r: int) -> float:
    v = r / _DEN  # big-int true division: correctly rounded to double
    return v if v < 1.0 else _BELOW_ONE


def weyl_term(n: int, alpha: IrrationalId = IrrationalId.PI, precision_bits: int = 128) -> float:
    """Fractional part {n*alpha}, exactly rounded to double.

    precision_bits is validated against the bound 64 + bit_length(n); the
    computation always uses the full constant table, so any two calls whose
    precision_bits satisfy the bound return bit-identical values.
    """
    n = int(n)
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    _check_precision(n, int(precision_bits))
    return _to_unit((n * _FRAC_TABLE[alpha]) & _MASK)


_cache_lock = threading.Lock()


@lru_cache(maxsize=16)
def _unit_prefix(alpha: IrrationalId, n_terms: int) -> np.ndarray:
    """Read-only array of {k*alpha} for k = 1..n_terms."""
    a = _FRAC_TABLE[alpha]
    out = np.empty(n_terms)
    r = 0
    for i in range(n_terms):
        r = (r + a) & _MASK
        out[i] = _to_unit(r)
    out.flags.writeable = False
    return out


def weyl_prefix(n_terms: int, alpha: IrrationalId = IrrationalId.PI, precision_bits: int = 128) -> np.ndarray:
    """First n_terms values {1*alpha}, {2*alpha}, ..., as a read-only array.

    Element k-1 equals weyl_term(k, alpha, precision_bits) exactly (the
    running fixed-point accumulator is the same integer n*alpha mod 2^F).
    """
    n_terms = int(n_terms)
    if n_terms < 1:
        raise DomainError(f"n_terms must be >= 1, got {n_terms}")
    _check_precision(n_terms, int(precision_bits))
    with _cache_lock:
        return _unit_prefix(alpha, n_terms)


def discrepancy_fraction(values, c: float, d: float) -> float:
    """Fraction of values inside the closed interval [c, d] of [0, 1].

    For an equidistributed sequence this converges to d - c as the number of
    values grows.
    """
    arr = np.asarray(values, dtype=float)
    if arr.size == 0:
        raise DomainError("values must be nonempty")
    if not (0.0 <= c <= d <= 1.0):
        raise DomainError(f"need 0 <= c <= d <= 1, got c={c}, d={d}")
    return np.count_nonzero((arr >= c) & (arr <= d)) / arr.size
