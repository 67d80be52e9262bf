"""Strictly increasing continuous distribution families (Gaussian, Cauchy).

Location-scale members expose CDF, quantile, density, and deterministic
inverse-transform sampling: pushing an equidistributed sequence on (0,1)
through the quantile function yields a sequence equidistributed under the
target measure.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from math import isfinite, pi

import numpy as np

from ._backend import kernels
from .errors import DomainError
from .weyl import IrrationalId, weyl_prefix

__all__ = [
    "Kind",
    "DistributionSpec",
    "GeneratorKind",
    "Provenance",
    "SampleWindow",
    "cdf",
    "quantile",
    "density",
    "sample_via_weyl",
    "STD_GAUSSIAN",
    "STD_CAUCHY",
]


class Kind(enum.Enum):
    GAUSSIAN = "gaussian"
    CAUCHY = "cauchy"


@dataclass(frozen=True)
class DistributionSpec:
    """A location-scale member of a strictly increasing continuous family."""

    kind: Kind
    location: float = 0.0
    scale: float = 1.0

    def __post_init__(self):
        if not (isfinite(self.location) and isfinite(self.scale)):
            raise DomainError("location and scale must be finite")
        if self.scale <= 0:
            raise DomainError(f"scale must be > 0, got {self.scale}")

    def standard(self) -> "DistributionSpec":
        """The standard (location 0, scale 1) member of the same kind."""
        return DistributionSpec(self.kind)


STD_GAUSSIAN = DistributionSpec(Kind.GAUSSIAN)
STD_CAUCHY = DistributionSpec(Kind.CAUCHY)


class GeneratorKind(enum.Enum):
    WEYL_INVERSE_CDF = "weyl-inverse-cdf"
    PSEUDO_RANDOM = "pseudo-random"


@dataclass(frozen=True)
class Provenance:
    """How a sample window was produced; determines it fully for Weyl windows."""

    generator: GeneratorKind
    source_spec: DistributionSpec
    alpha: IrrationalId | None = None
    precision_bits: int | None = None
    seed: int | None = None


@dataclass(frozen=True)
class SampleWindow:
    """A finite prefix x_1..x_N of a conceptually infinite sample."""

    values: np.ndarray = field(repr=False)
    provenance: Provenance

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=float)
        if arr.ndim != 1 or arr.size < 1:
            raise DomainError("a sample window is a 1-D sequence of length >= 1")
        if arr.flags.writeable:
            arr = arr.copy()
            arr.flags.writeable = False
        object.__setattr__(self, "values", arr)

    def __len__(self) -> int:
        return self.values.size

    def prefix(self, n: int) -> "SampleWindow":
        """The window of the first n points (shares the same provenance)."""
        if not 1 <= n <= len(self):
            raise DomainError(f"prefix length {n} outside 1..{len(self)}")
        return SampleWindow(self.values[:n], self.provenance)


def _standardize(spec: DistributionSpec, x) -> np.ndarray:
    return (np.asarray(x, dtype=float) - spec.location) / spec.scale


def _as_result(arr: np.ndarray, scalar: bool):
    return float(arr[0]) if scalar else arr


def cdf(spec: DistributionSpec, x):
    """F((x - location)/scale) for the standard member F of the kind."""
    scalar = np.isscalar(x) or np.ndim(x) == 0
    t = np.atleast_1d(_standardize(spec, x))
    if spec.kind is Kind.GAUSSIAN:
        out = kernels.gauss_cdf(t)
    else:
        out = np.arctan(t) / pi + 0.5
    return _as_result(out, scalar)


def _cauchy_std_quantile(u: np.ndarray) -> np.ndarray:
    # tan(pi*(u - 1/2)) rearranged per half so the pole side evaluates tan
    # at a small angle: u > 1/2 -> cot(pi*(1-u)), u < 1/2 -> -cot(pi*u).
    # 1-u is exact for u in [1/2, 1], so q(1-u) = -q(u) holds exactly.
    out = np.empty_like(u)
    lo = u < 0.5
    hi = u > 0.5
    out[lo] = -1.0 / np.tan(pi * u[lo])
    out[hi] = 1.0 / np.tan(pi * (1.0 - u[hi]))
    out[u == 0.5] = 0.0
    return out


def quantile(spec: DistributionSpec, u):
    """Inverse CDF; strictly increasing on (0, 1), diverges at the endpoints."""
    scalar = np.isscalar(u) or np.ndim(u) == 0
    uu = np.atleast_1d(np.asarray(u, dtype=float))
    if np.any((uu <= 0.0) | (uu >= 1.0)):
        bad = uu[(uu <= 0.0) | (uu >= 1.0)][0]
        raise DomainError(f"quantile requires 0 < u < 1, got {bad}")
    if spec.kind is Kind.GAUSSIAN:
        q = np.asarray(kernels.gauss_quantile(uu))
    else:
        q = _cauchy_std_quantile(uu)
    return _as_result(spec.location + spec.scale * q, scalar)


def density(spec: DistributionSpec, x):
    """(1/scale) f((x - location)/scale) for the standard density f."""
    scalar = np.isscalar(x) or np.ndim(x) == 0
    t = np.atleast_1d(_standardize(spec, x))
    if spec.kind is Kind.GAUSSIAN:
        out = np.asarray(kernels.gauss_density(t)) / spec.scale
    else:
        out = 1.0 / (pi * (1.0 + t * t)) / spec.scale
    return _as_result(out, scalar)


def sample_via_weyl(spec: DistributionSpec, n_terms: int,
                    alpha: IrrationalId = IrrationalId.PI,
                    precision_bits: int = 128) -> SampleWindow:
    """Deterministic window x_k = quantile(spec, {k*alpha}), k = 1..n_terms."""
    units = weyl_prefix(n_terms, alpha, precision_bits)
    values = quantile(spec, units)
    prov = Provenance(GeneratorKind.WEYL_INVERSE_CDF, spec,
                      alpha=alpha, precision_bits=precision_bits)
    return SampleWindow(values, prov)
