"""The compact group {0,1}^N: coin-toss simulation and estimation.

Bernoulli bit streams from a counter-based generator (reproducible without
generating earlier bits), Cesaro-mean estimation of the success parameter,
the binary-to-unit-interval isomorphism, a Monte Carlo witness that fair
coin sequences with Cesaro mean 1/2 are typical under the Haar measure,
and the classifier for when objective / strong objective estimates exist
over a restricted parameter set.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .errors import DomainError

__all__ = [
    "DeterministicPattern",
    "SeededDraw",
    "BinarySequence",
    "SetCardinality",
    "ParameterSetDescriptor",
    "ObjectivityVerdict",
    "bernoulli_sample",
    "cesaro_estimate",
    "bits_to_unit",
    "prevalence_monte_carlo",
    "classify_objectivity",
]

_U64 = (1 << 64) - 1


@dataclass(frozen=True)
class DeterministicPattern:
    """Provenance of a hand-built bit pattern."""

    descriptor: str


@dataclass(frozen=True)
class SeededDraw:
    """Provenance of a seeded Bernoulli draw."""

    seed: int
    theta: float


@dataclass(frozen=True)
class BinarySequence:
    """A finite prefix of an element of {0,1}^N."""

    bits: np.ndarray = field(repr=False)
    provenance: Union[DeterministicPattern, SeededDraw]

    def __post_init__(self):
        arr = np.asarray(self.bits)
        if arr.ndim != 1 or arr.size < 1:
            raise DomainError("bits must be a 1-D sequence of length >= 1")
        if not np.isin(arr, (0, 1)).all():
            raise DomainError("every element must be 0 or 1")
        arr = arr.astype(np.uint8, copy=True)
        arr.flags.writeable = False
        object.__setattr__(self, "bits", arr)

    def __len__(self) -> int:
        return self.bits.size

    def cesaro_trace(self) -> np.ndarray:
        """Running means (sum of the first n bits)/n for n = 1..N."""
        return np.cumsum(self.bits, dtype=np.int64) / np.arange(1, len(self) + 1)


def _stream(seed: int, stream: int) -> np.random.Generator:
    # Philox4x64 keyed directly by (seed, stream): a pure counter-based
    # function of the key, so draw k of any stream never depends on other
    # streams or on draws > k
    key = np.array([seed & _U64, stream & _U64], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def bernoulli_sample(theta: float, n_bits: int, seed: int) -> BinarySequence:
    """n_bits independent draws with P(1) = theta from the keyed generator.

    Bit k is 1 iff the k-th uniform of stream (seed, 0) is below theta;
    deterministic in (theta, n_bits, seed), and a shorter call returns a
    prefix of a longer one.  theta = 1/2 realizes the Haar measure.
    """
    if not 0.0 < theta < 1.0:
        raise DomainError(f"theta must lie in (0,1), got {theta}")
    if n_bits < 1:
        raise DomainError(f"n_bits must be >= 1, got {n_bits}")
    u = _stream(seed, 0).random(n_bits)
    return BinarySequence((u < theta).astype(np.uint8), SeededDraw(int(seed), float(theta)))


def cesaro_estimate(seq: BinarySequence, fallback, convergence_tol: float) -> float:
    """Cesaro-mean estimate of the success parameter with theta_0 fallback.

    The running means are diagnosed for convergence exactly as in the
    strong fractional estimator (max deviation from the final mean over the
    second half of the window).  The diagnosed limit is returned when it
    lies inside the open interval (0,1) and differs from theta_0; boundary
    limits, equality with theta_0, and non-convergence all return theta_0.
    """
    from .estimators import _diagnose_limit, _fallback_value

    if len(seq) < 4:
        raise DomainError(f"need a sequence of length >= 4, got {len(seq)}")
    if convergence_tol <= 0:
        raise DomainError("convergence_tol must be > 0")
    theta0 = _fallback_value(fallback)
    converged, limit = _diagnose_limit(seq.cesaro_trace(), convergence_tol)
    if converged and 0.0 < limit < 1.0 and limit != theta0:
        return limit
    return theta0


def bits_to_unit(seq: BinarySequence) -> float:
    """Sum of bits_k / 2^k: the Borel isomorphism of {0,1}^N onto [0,1]."""
    # terms beyond k ~ 1074 underflow to zero and cannot change the sum
    depth = min(len(seq), 1100)
    total = 0.0
    for k in range(1, depth + 1):
        if seq.bits[k - 1]:
            total += math.ldexp(1.0, -k)
    return total


def prevalence_monte_carlo(epsilon: float, n_bits: int, trials: int, seed: int) -> float:
    """Fraction of fair-coin trials whose Cesaro mean lands within epsilon of 1/2.

    Trial t draws its bits from stream (seed, 1+t), so trials can be
    evaluated in any order (or concurrently) with a scheduling-independent
    result.  A fraction near 1 witnesses that mean-1/2 sequences are
    typical under the Haar measure.
    """
    if epsilon <= 0:
        raise DomainError("epsilon must be > 0")
    if n_bits < 1 or trials < 1:
        raise DomainError("n_bits and trials must be >= 1")
    hits = 0
    # |count/n - 1/2| <= eps decided as |2*count - n| <= 2*eps*n: the left
    # side is an exact integer, so the acceptance region is exactly
    # symmetric under flipping every bit (count -> n - count)
    bound = 2.0 * epsilon * n_bits
    for t in range(trials):
        u = _stream(seed, 1 + t).random(n_bits)
        count = int(np.count_nonzero(u < 0.5))
        if abs(2 * count - n_bits) <= bound:
            hits += 1
    return hits / trials


class SetCardinality(enum.Enum):
    FINITE_LIST = "finite"
    COUNTABLY_INFINITE = "countably-infinite"
    UNCOUNTABLE = "uncountable"


@dataclass(frozen=True)
class ParameterSetDescriptor:
    """A restricted parameter set inside (0,1), described by cardinality.

    Only finite sets carry their elements; for the infinite kinds the
    caller asserts the cardinality (it is not decidable from data).
    """

    kind: SetCardinality
    elements: tuple[float, ...] | None = None
    contains_half: bool = False

    def __post_init__(self):
        if self.kind is SetCardinality.FINITE_LIST:
            if self.elements is None:
                raise DomainError("a finite descriptor must list its elements")
            elems = tuple(float(e) for e in self.elements)
            if len(set(elems)) != len(elems):
                raise DomainError("elements must be distinct")
            if any(not 0.0 < e < 1.0 for e in elems):
                raise DomainError("elements must lie in the open interval (0,1)")
            if self.contains_half != (0.5 in elems):
                raise DomainError("contains_half is inconsistent with the elements")
            object.__setattr__(self, "elements", elems)
        elif self.elements is not None:
            raise DomainError("only finite descriptors carry an element list")


class ObjectivityVerdict(enum.Enum):
    STRONG_OBJECTIVE_EXISTS = "strong-objective-exists"
    OBJECTIVE_EXISTS_NOT_STRONG = "objective-exists-not-strong"
    NO_OBJECTIVE_ESTIMATE = "no-objective-estimate"


def classify_objectivity(desc: ParameterSetDescriptor) -> ObjectivityVerdict:
    """Existence of objective / strong objective estimates over the set.

    A strong objective consistent estimate exists iff the set is finite and
    omits 1/2; an objective (but not strong) one iff it is countably
    infinite and omits 1/2; otherwise (1/2 present, or uncountable) no
    objective estimate exists.
    """
    if desc.kind is SetCardinality.FINITE_LIST and len(desc.elements) < 2:
        raise DomainError("the classifier assumes a set of at least 2 parameters")
    if desc.contains_half:
        return ObjectivityVerdict.NO_OBJECTIVE_ESTIMATE
    if desc.kind is SetCardinality.FINITE_LIST:
        return ObjectivityVerdict.STRONG_OBJECTIVE_EXISTS
    if desc.kind is SetCardinality.COUNTABLY_INFINITE:
        return ObjectivityVerdict.OBJECTIVE_EXISTS_NOT_STRONG
    return ObjectivityVerdict.NO_OBJECTIVE_ESTIMATE
