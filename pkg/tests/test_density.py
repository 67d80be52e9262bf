import math

import numpy as np
import pytest

from weylest.density import (
    BandwidthSchedule,
    SigmaEstimateConfig,
    kernel_density_at,
    kernel_density_profile,
    sample_sd,
    sigma_kernel_estimate,
    sigma_mean_signcount_estimate,
    sigma_mean_signcount_trace,
    sigma_signcount_estimate,
    sigma_signcount_trace,
)
from weylest.distributions import DistributionSpec, Kind, sample_via_weyl
from weylest.errors import DomainError, EstimateUndefinedError

from conftest import make_window

GAUSS_DENS_0 = 0.3989422804014327   # phi(0)
GAUSS_DENS_1 = 0.24197072451914334  # phi(1)
Q_025 = -0.6744897501960817         # Phi^{-1}(0.25), 60-digit oracle


def test_schedule_validation():
    with pytest.raises(DomainError):
        BandwidthSchedule(exponent=0.0)
    with pytest.raises(DomainError):
        BandwidthSchedule(exponent=1.0)
    with pytest.raises(DomainError):
        BandwidthSchedule(scale_factor=0.0)
    s = BandwidthSchedule(exponent=0.2, scale_factor=2.0)
    assert s.bandwidth(1) == 2.0
    assert s.bandwidth(32) == pytest.approx(2.0 * 32 ** -0.2)


def test_kernel_density_single_point():
    w = make_window([4.0])
    schedule = BandwidthSchedule(exponent=0.5, scale_factor=1.0)  # a_1 = 1
    assert kernel_density_at(w, 4.0, schedule) == pytest.approx(GAUSS_DENS_0, abs=1e-15)


def test_kernel_density_two_symmetric_offsets():
    w = make_window([0.0, 2.0])
    schedule = BandwidthSchedule(exponent=0.2, scale_factor=2.0 ** 0.2)  # a_2 = 1
    assert kernel_density_at(w, 1.0, schedule) == pytest.approx(GAUSS_DENS_1, rel=1e-14)


def test_kernel_density_at_mode_large_window():
    w = sample_via_weyl(DistributionSpec(Kind.GAUSSIAN), 100_000)
    assert kernel_density_at(w, 0.0) == pytest.approx(GAUSS_DENS_0, abs=0.01)


def test_kernel_density_nonnegative():
    rng = np.random.default_rng(4)
    w = make_window(rng.standard_normal(200))
    grid = np.linspace(-6, 6, 97)
    assert (kernel_density_profile(w, grid) >= 0).all()


@pytest.mark.parametrize("n", [50, 500])
def test_kernel_density_normalizes(n):
    w = sample_via_weyl(DistributionSpec(Kind.GAUSSIAN), n)
    h = 1.0 * n ** -0.2
    lo = w.values.min() - 10 * h
    hi = w.values.max() + 10 * h
    grid = np.linspace(lo, hi, 20001)
    vals = kernel_density_profile(w, grid)
    trapezoid = getattr(np, "trapezoid", None) or np.trapz
    assert trapezoid(vals, grid) == pytest.approx(1.0, abs=1e-6)


def test_kernel_sup_error_shrinks():
    w = sample_via_weyl(DistributionSpec(Kind.GAUSSIAN), 10_000)
    grid = np.linspace(-4, 4, 101)
    phi = np.exp(-0.5 * grid * grid) / math.sqrt(2 * math.pi)
    err4 = np.abs(kernel_density_profile(w, grid) - phi).max()
    err3 = np.abs(kernel_density_profile(w.prefix(1000), grid) - phi).max()
    assert err4 < err3
    assert err4 <= 0.02


def test_sigma_kernel_single_point_inversion():
    # with x_1 = a and a_1 = c the per-index value is exactly c: the kernel
    # density at the mean is 1/(sqrt(2 pi) c), the algebraic inversion
    w = make_window([3.0])
    cfg = SigmaEstimateConfig(known_mean=3.0, fallback_sigma=1.0, n0=1)
    schedule = BandwidthSchedule(exponent=0.5, scale_factor=5.0)  # a_1 = 5
    assert sigma_kernel_estimate(w, cfg, schedule) == 5.0


def test_sigma_kernel_fallback_on_equality():
    w = make_window([3.0])
    cfg = SigmaEstimateConfig(known_mean=3.0, fallback_sigma=5.0, n0=1)
    schedule = BandwidthSchedule(exponent=0.5, scale_factor=5.0)
    assert sigma_kernel_estimate(w, cfg, schedule) == 5.0


def test_sigma_kernel_zero_density():
    w = make_window([1000.0])
    cfg = SigmaEstimateConfig(known_mean=0.0, fallback_sigma=1.0, n0=1)
    schedule = BandwidthSchedule(exponent=0.5, scale_factor=0.01)
    with pytest.raises(EstimateUndefinedError):
        sigma_kernel_estimate(w, cfg, schedule)


def test_sigma_kernel_converges_midsize():
    w = sample_via_weyl(DistributionSpec(Kind.GAUSSIAN, 3.0, 5.0), 20_000)
    cfg = SigmaEstimateConfig(known_mean=3.0, fallback_sigma=1.0, n0=10_000)
    assert sigma_kernel_estimate(w, cfg) == pytest.approx(5.0, abs=0.5)


def test_sigma_signcount_reference_cells(gauss35_window_2000):
    tr = sigma_signcount_trace(gauss35_window_2000, 3.0)
    assert tr[199] == pytest.approx(4.895457577, abs=1e-4)
    assert tr[1999] == pytest.approx(4.981223889, abs=1e-4)


def test_sigma_signcount_algebra():
    # one nonpositive point among four: u = 1/4, value -3/Phi^{-1}(0.25)
    w = make_window([-1.0, 1.0, 2.0, 3.0])
    tr = sigma_signcount_trace(w, 3.0)
    assert tr[3] == pytest.approx(-3.0 / Q_025, rel=1e-13)
    # undefined prefixes: u_1 = 1 diverges, u_2 = 1/2 divides by zero
    assert math.isnan(tr[0]) and math.isnan(tr[1])


def test_sigma_signcount_estimate_tail(gauss35_window_2000):
    cfg = SigmaEstimateConfig(known_mean=3.0, fallback_sigma=1.0, n0=1000)
    est = sigma_signcount_estimate(gauss35_window_2000, cfg)
    tr = sigma_signcount_trace(gauss35_window_2000, 3.0)[999:]
    assert est == np.nanmax(tr)


def test_sigma_signcount_validation(gauss35_window_2000):
    with pytest.raises(DomainError):
        sigma_signcount_estimate(
            gauss35_window_2000, SigmaEstimateConfig(0.0, 1.0, 10))
    with pytest.raises(DomainError):
        sigma_signcount_estimate(
            gauss35_window_2000, SigmaEstimateConfig(3.0, 1.0, 9999999))
    # every tail index undefined: all points positive
    w = make_window([1.0, 2.0, 3.0, 4.0])
    with pytest.raises(EstimateUndefinedError):
        sigma_signcount_estimate(w, SigmaEstimateConfig(3.0, 1.0, 1))


def test_sigma_mean_signcount_reference_cells(gauss35_window_2000):
    tr = sigma_mean_signcount_trace(gauss35_window_2000)
    assert tr[199] == pytest.approx(5.205401325, abs=1e-4)
    assert tr[1999] == pytest.approx(5.239119585, abs=1e-4)


def test_sigma_mean_signcount_algebra():
    # mean 1 and u = 1/4 at n = 4: value -1/Phi^{-1}(0.25)
    w = make_window([-1.0, 1.0, 2.0, 2.0])
    tr = sigma_mean_signcount_trace(w)
    assert tr[3] == pytest.approx(-1.0 / Q_025, rel=1e-13)


def test_sigma_mean_signcount_ignores_known_mean(gauss35_window_2000):
    a = sigma_mean_signcount_estimate(
        gauss35_window_2000, SigmaEstimateConfig(3.0, 1.0, 1000))
    b = sigma_mean_signcount_estimate(
        gauss35_window_2000, SigmaEstimateConfig(-123.0, 1.0, 1000))
    assert a == b


def test_sigma_estimators_agree_at_2000(gauss35_window_2000):
    cfg = SigmaEstimateConfig(known_mean=3.0, fallback_sigma=1.0, n0=1000)
    a = sigma_signcount_estimate(gauss35_window_2000, cfg)
    b = sigma_mean_signcount_estimate(gauss35_window_2000, cfg)
    assert abs(a - b) <= 0.3


def test_sample_sd_direct():
    assert sample_sd(make_window([1.0, 3.0]), corrected=False) == 1.0
    assert sample_sd(make_window([1.0, 3.0]), corrected=True) == pytest.approx(math.sqrt(2), rel=1e-15)


def test_sample_sd_reference_cell():
    w = sample_via_weyl(DistributionSpec(Kind.GAUSSIAN, 3.0, 5.0), 1000)
    assert sample_sd(w, corrected=False) == pytest.approx(5.066642282, abs=1e-4)


def test_sample_sd_validation():
    with pytest.raises(DomainError):
        sample_sd(make_window([2.0]), corrected=True)
    assert sample_sd(make_window([2.0]), corrected=False) == 0.0


def test_sample_sd_scale_equivariance():
    rng = np.random.default_rng(17)
    values = rng.standard_normal(100)
    for c in (-3.7, 0.25, 11.0):
        got = sample_sd(make_window(c * values))
        want = abs(c) * sample_sd(make_window(values))
        assert got == pytest.approx(want, rel=1e-12)
