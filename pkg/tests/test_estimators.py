import math

import numpy as np
import pytest

from weylest.distributions import DistributionSpec, Kind, quantile, sample_via_weyl
from weylest.errors import DomainError, EstimateUndefinedError
from weylest.estimators import (
    FallbackParam,
    Limit,
    ProbePoint,
    binary_shadow,
    cdf_point_estimate,
    objective_cdf_estimate,
    sample_mean,
    sign_count_estimate,
    strong_fractional_estimate,
    tail_extrema,
    trace,
)

from conftest import make_window

GAUSS = DistributionSpec(Kind.GAUSSIAN)
CAUCHY = DistributionSpec(Kind.CAUCHY)

PHI_AT_M1 = 0.15865525393145705  # standard normal CDF at -1, 60-digit oracle
NEG_Q_04 = 0.2533471031357997   # -Phi^{-1}(0.4), 60-digit oracle


def test_sign_count_reference_cell():
    # published reference: theta=1 Gaussian window at n = 200
    window = sample_via_weyl(DistributionSpec(Kind.GAUSSIAN, 1.0, 1.0), 200)
    est = sign_count_estimate(window, GAUSS)
    assert est == pytest.approx(1.036433389, abs=1e-4)
    # the sign fraction is exactly 30/200, so the value is -Phi^{-1}(0.15)
    assert est == pytest.approx(1.0364333894937896, abs=1e-12)


def test_sign_count_small_window():
    window = make_window([-1.0, 2.0, 3.0, -4.0, 5.0])
    assert sign_count_estimate(window, GAUSS) == pytest.approx(NEG_Q_04, abs=1e-12)


def test_sign_count_half_nonpositive_is_zero():
    window = make_window([-1.0, 1.0, -2.0, 2.0])
    assert sign_count_estimate(window, GAUSS) == 0.0


@pytest.mark.parametrize("values", [[1.0, 2.0], [-1.0, -2.0], [0.0]])
def test_sign_count_divergent_fraction(values):
    with pytest.raises(EstimateUndefinedError):
        sign_count_estimate(make_window(values), GAUSS)


def test_sign_count_boundary_tie_counted_le():
    # a point exactly at zero lies in the closed ray and counts
    window = make_window([0.0, 1.0])
    assert sign_count_estimate(window, GAUSS) == -quantile(GAUSS, 0.5)


def test_cdf_point_direct_counts():
    assert cdf_point_estimate(make_window([-1.0, -2.0, 3.0]), 0.0) == pytest.approx(2 / 3)
    assert cdf_point_estimate(make_window([5.0]), ProbePoint(0.0)) == 0.0


def test_cdf_point_consistency(gauss1_window_1e4):
    est = cdf_point_estimate(gauss1_window_1e4, 0.0)
    assert abs(est - PHI_AT_M1) <= 0.02


def test_sample_mean_values():
    assert sample_mean(make_window([2.0, 4.0])) == 3.0
    w = sample_via_weyl(DistributionSpec(Kind.GAUSSIAN, 1.0, 1.0), 100)
    assert sample_mean(w) == pytest.approx(1.010190601, abs=1e-4)
    w = sample_via_weyl(DistributionSpec(Kind.CAUCHY, 1.0, 1.0), 200)
    assert sample_mean(w) == pytest.approx(54.09578271, abs=0.1)


def test_trace_running_counts():
    tr = trace(make_window([-1.0, 2.0, -3.0]), 0.0)
    assert list(tr.values) == [1.0, 0.5, 2 / 3]
    tr = trace(make_window([5.0]), 0.0)
    assert list(tr.values) == [0.0]


def test_trace_last_equals_full_estimate():
    w = sample_via_weyl(DistributionSpec(Kind.GAUSSIAN, 1.0, 1.0), 10)
    tr = trace(w, ProbePoint(0.0))
    assert tr.values[-1] == cdf_point_estimate(w, 0.0)


def test_tail_extrema_direct():
    from weylest.estimators import EstimatorTrace

    tr = EstimatorTrace(np.array([3.0, 1.0, 4.0, 1.0, 5.0]))
    assert tail_extrema(tr, 3) == (5.0, 1.0)
    tr = EstimatorTrace(np.array([0.2]))
    assert tail_extrema(tr, 1) == (0.2, 0.2)


def test_tail_extrema_validation():
    from weylest.estimators import EstimatorTrace

    tr = EstimatorTrace(np.array([0.2, 0.4]))
    with pytest.raises(DomainError):
        tail_extrema(tr, 0)
    with pytest.raises(DomainError):
        tail_extrema(tr, 3)


def test_tail_extrema_monotone_bracketing():
    rng = np.random.default_rng(3)
    from weylest.estimators import EstimatorTrace

    tr = EstimatorTrace(rng.random(200))
    sups, infs = zip(*(tail_extrema(tr, n0) for n0 in range(1, 201)))
    assert all(a >= b for a, b in zip(sups, sups[1:]))
    assert all(a <= b for a, b in zip(infs, infs[1:]))


def test_tail_extrema_bracket_limit(gauss1_window_1e4):
    sup, inf = tail_extrema(trace(gauss1_window_1e4, 0.0), 5000)
    assert abs(sup - PHI_AT_M1) <= 0.02
    assert abs(inf - PHI_AT_M1) <= 0.02


def test_objective_estimate_branches(gauss1_window_1e4):
    inside = objective_cdf_estimate(
        gauss1_window_1e4, 0.0, lambda v: 0.0 < v < 1.0,
        FallbackParam(0.9), 5000, Limit.UPPER_LIMIT)
    assert abs(inside - PHI_AT_M1) <= 0.02

    rejected = objective_cdf_estimate(
        gauss1_window_1e4, 0.0, lambda v: False, FallbackParam(0.9), 5000)
    assert rejected == 0.9

    # a constant trace hitting theta0 exactly returns theta0 unchanged
    w = make_window([-1.0, -2.0, -3.0, -4.0])
    hit = objective_cdf_estimate(w, 0.0, lambda v: True, FallbackParam(1.0), 1)
    assert hit == 1.0


def test_objective_estimate_lower_variant():
    w = make_window([-1.0, 2.0, -3.0, 4.0])
    lo = objective_cdf_estimate(w, 0.0, lambda v: True, FallbackParam(0.9), 1, Limit.LOWER_LIMIT)
    hi = objective_cdf_estimate(w, 0.0, lambda v: True, FallbackParam(0.9), 1, Limit.UPPER_LIMIT)
    tr = trace(w, 0.0).values
    assert lo == tr.min() and hi == tr.max()


def test_strong_fractional_converged_cases():
    # running means settle at ~3.7 (cumsum rounding keeps this approximate)
    w = make_window([3.7] * 64)
    assert strong_fractional_estimate(w, 0.01, 53) == pytest.approx(0.7, abs=1e-12)
    w = make_window([1.0] * 64)
    assert strong_fractional_estimate(w, 0.01, 53) == 1.0
    # limits within convergence_tol of 1 also snap to 1
    w = make_window([1.0 + 5e-3] * 64)
    assert strong_fractional_estimate(w, 0.01, 53) == 1.0


def test_strong_fractional_divergent_uses_shadow():
    values = [(-2.0) ** k for k in range(1, 11)]
    w = make_window(values)
    est = strong_fractional_estimate(w, 0.01, 10)
    assert est == binary_shadow(w, 10) == 1023 / 3072


def test_strong_fractional_shadow_depth_clamped():
    values = [(-2.0) ** k for k in range(1, 11)]
    w = make_window(values)
    assert strong_fractional_estimate(w, 0.01, 53) == binary_shadow(w, 10)


def test_strong_fractional_validation():
    with pytest.raises(DomainError):
        strong_fractional_estimate(make_window([1.0, 2.0, 3.0]), 0.01, 5)
    with pytest.raises(DomainError):
        strong_fractional_estimate(make_window([1.0] * 8), -1.0, 5)
    with pytest.raises(DomainError):
        strong_fractional_estimate(make_window([1.0] * 8), 0.01, 0)


@pytest.mark.parametrize("level", [-2.25, -0.5, 0.0, 2.0, 3.5])
def test_fractional_part_contract(level):
    # dyadic levels keep every running mean exact, so the diagnosed limit
    # is the level itself and the fractional-part contract is exact
    w = make_window([level] * 16)
    est = strong_fractional_estimate(w, 1e-9, 16)
    assert 0.0 <= est < 1.0
    assert est == level - math.floor(level)
    assert float(level - est).is_integer()


def test_permutation_invariance():
    rng = np.random.default_rng(8)
    values = rng.standard_normal(64)
    perm = rng.permutation(values)
    w, wp = make_window(values), make_window(perm)
    assert sign_count_estimate(w, GAUSS) == sign_count_estimate(wp, GAUSS)
    assert cdf_point_estimate(w, 0.3) == cdf_point_estimate(wp, 0.3)
    assert sample_mean(w) == sample_mean(wp)  # fsum is exactly rounded
    # binary_shadow is order-dependent: these values make that observable
    assert binary_shadow(w, 64) != binary_shadow(wp, 64)


def test_sign_count_cdf_duality():
    rng = np.random.default_rng(21)
    for _ in range(20):
        w = make_window(rng.standard_normal(rng.integers(2, 40)))
        u = cdf_point_estimate(w, 0.0)
        if u in (0.0, 1.0):
            continue
        assert sign_count_estimate(w, CAUCHY) == -quantile(CAUCHY, u)
        assert sign_count_estimate(w, GAUSS) == -quantile(GAUSS, u)


def test_heavy_tail_contrast():
    w = sample_via_weyl(DistributionSpec(Kind.CAUCHY, 1.0, 1.0), 1000)
    assert abs(sign_count_estimate(w, CAUCHY) - 1.0) <= 0.05
    assert abs(sample_mean(w) - 1.0) >= 1.0


def test_binary_shadow_values():
    values = [(-2.0) ** k for k in range(1, 11)]
    assert binary_shadow(make_window(values), 10) == 1023 / 3072
    assert binary_shadow(make_window([1.0] * 53), 53) == 1.0 - 2.0 ** -53
    assert binary_shadow(make_window([-1.0, 0.0, -5.0]), 3) == 0.0


def test_binary_shadow_validation():
    w = make_window([1.0, -1.0])
    with pytest.raises(DomainError):
        binary_shadow(w, 3)
    with pytest.raises(DomainError):
        binary_shadow(w, 0)
