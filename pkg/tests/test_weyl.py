import numpy as np
import pytest

from weylest.errors import DomainError, PrecisionError
from weylest.weyl import FRAC_BITS, IrrationalId, discrepancy_fraction, weyl_prefix, weyl_term

# exactly rounded doubles of {n*alpha}, frozen from a 200-digit computation
ORACLE_TERMS = {
    (IrrationalId.PI, 1): 0.14159265358979323,
    (IrrationalId.PI, 2): 0.28318530717958645,
    (IrrationalId.PI, 3): 0.42477796076937974,
    (IrrationalId.PI, 7): 0.9911485751285527,
    (IrrationalId.SQRT2, 1): 0.41421356237309503,
    (IrrationalId.GOLDEN_RATIO, 1): 0.6180339887498949,
}


@pytest.mark.parametrize("alpha,n", sorted(ORACLE_TERMS, key=str))
def test_terms_exactly_rounded(alpha, n):
    assert weyl_term(n, alpha, 128) == ORACLE_TERMS[(alpha, n)]


def test_term_matches_mpmath_oracle():
    mp = pytest.importorskip("mpmath")
    consts = {
        IrrationalId.PI: mp.pi,
        IrrationalId.SQRT2: lambda: mp.sqrt(2),
        IrrationalId.GOLDEN_RATIO: lambda: (1 + mp.sqrt(5)) / 2,
    }
    with mp.workdps(250):
        for alpha, const in consts.items():
            c = const() if callable(const) else +const
            for n in (1, 13, 355, 99991, 123456789):
                expected = float(mp.frac(c * n))
                assert weyl_term(n, alpha, 256) == expected, (alpha, n)


def test_deterministic_and_precision_saturated():
    a = weyl_term(12345, IrrationalId.PI, 128)
    b = weyl_term(12345, IrrationalId.PI, 128)
    c = weyl_term(12345, IrrationalId.PI, 1024)
    assert a == b == c


def test_term_validation():
    with pytest.raises(DomainError):
        weyl_term(0)
    with pytest.raises(PrecisionError):
        weyl_term(2 ** 40, IrrationalId.PI, 100)  # needs 64 + 41 bits
    with pytest.raises(PrecisionError):
        weyl_term(1 << (FRAC_BITS - 60), IrrationalId.PI, 2 * FRAC_BITS)  # table exhausted


def test_prefix_equals_terms():
    seq = weyl_prefix(500)
    for k in (1, 2, 17, 499, 500):
        assert seq[k - 1] == weyl_term(k)


def test_prefix_validation():
    with pytest.raises(DomainError):
        weyl_prefix(0)
    with pytest.raises(PrecisionError):
        weyl_prefix(2 ** 40, IrrationalId.PI, 100)


def test_prefix_is_read_only():
    seq = weyl_prefix(10)
    with pytest.raises(ValueError):
        seq[0] = 0.5


def test_codomain():
    seq = weyl_prefix(10_000)
    assert seq.min() >= 0.0
    assert seq.max() < 1.0


def test_equidistribution_count_at_1000():
    seq = weyl_prefix(1000)
    count = np.count_nonzero((seq >= 0.0) & (seq <= 0.5))
    assert abs(count - 500) <= 50
    assert count == 496  # frozen: the deterministic sequence never changes


def test_discrepancy_direct_counts():
    assert discrepancy_fraction((0.1, 0.6, 0.9), 0.0, 0.5) == pytest.approx(1 / 3)
    assert discrepancy_fraction((0.25,), 0.0, 1.0) == 1.0


def test_discrepancy_equidistribution_at_1e4():
    seq = weyl_prefix(10_000)
    assert abs(discrepancy_fraction(seq, 0.2, 0.7) - 0.5) <= 0.02


def test_discrepancy_additivity():
    rng = np.random.default_rng(5)
    values = rng.random(257)
    n = values.size
    for m in (0.0, 0.31, 0.5, 0.77, 1.0):
        lower = discrepancy_fraction(values, 0.0, m)
        upper = discrepancy_fraction(values, m, 1.0)
        boundary = np.count_nonzero(values == m) / n
        assert lower + upper - boundary == pytest.approx(1.0, abs=1e-12)


def test_discrepancy_validation():
    with pytest.raises(DomainError):
        discrepancy_fraction((), 0.0, 1.0)
    with pytest.raises(DomainError):
        discrepancy_fraction((0.5,), 0.6, 0.4)
    with pytest.raises(DomainError):
        discrepancy_fraction((0.5,), 0.0, 1.5)
