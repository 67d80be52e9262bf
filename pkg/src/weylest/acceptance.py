"""Acceptance checks: reference-table reproduction and convergence gates.

Each check returns a CheckResult; run_all() executes the full suite.  The
CLI exposes the suite behind --check, and the test suite wraps it one test
per criterion.

Reference values come from the published tables produced with spreadsheet
software.  Five cells marked "oracle repin" below disagreed with exact
recomputation (1088-bit Weyl terms, 60-digit quantiles) beyond the 1e-4
gate and are pinned to the recomputed values; see README for the listing.
The two scale-trace columns are emitted in the published layout, where the
mean/sign-count column precedes the known-mean sign-count column.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, replace
from fractions import Fraction

import numpy as np

from .coin import (
    ObjectivityVerdict,
    ParameterSetDescriptor,
    SetCardinality,
    bernoulli_sample,
    cesaro_estimate,
    classify_objectivity,
    prevalence_monte_carlo,
)
from .density import (
    SigmaEstimateConfig,
    kernel_density_profile,
    sigma_kernel_estimate,
)
from .distributions import (
    DistributionSpec,
    Kind,
    SampleWindow,
    cdf,
    quantile,
    sample_via_weyl,
)
from .estimators import (
    binary_shadow,
    cdf_point_estimate,
    sample_mean,
    sign_count_estimate,
    tail_extrema,
    trace,
)
from .harness import Table, builtin_config, emit_report, run_experiment
from .distributions import Provenance, GeneratorKind

__all__ = ["CheckResult", "run_all", "CHECKS"]


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    elapsed: float


# (n, sign_count, mean)
TABLE1_REFERENCE = {
    50: (0.994457883, 1.146952654),
    100: (1.036433389, 1.010190601),
    150: (1.022241387, 1.064790041),
    200: (1.036433389, 1.037987511),
    250: (1.027893346, 1.045296447),
    300: (1.036433389, 1.044049728),
    350: (1.030325691, 1.034339407),
    400: (1.036433389, 1.045181911),
    450: (1.031679632, 1.023083495),
    500: (1.036433389, 1.044635371),
    550: (1.04034032, 1.034899747),
    600: (1.036433389, 1.043940988),
    650: (1.03313984, 1.036321771),
    700: (1.030325691, 1.037905202),
    750: (1.033578332, 1.03728633),
    800: (1.03108705, 1.032630945),
    850: (1.033913784, 1.037321098),
    900: (1.031679632, 1.026202323),
    950: (1.034178696, 1.036669278),
    1000: (1.036433389, 1.031131694),
}

# (n, sign_count, mean); the mean column inherits the published loose print
TABLE2_REFERENCE = {
    50: (1.20879235, 2.555449288),
    100: (0.939062506, 1.331789564),
    150: (1.06489184, 71.87525566),
    200: (1.00000000, 54.09578271),
    250: (1.06489184, 64.59240343),
    300: (1.021166379, 54.03265563),
    350: (1.027297114, 56.39846672),
    400: (1.031919949, 49.58316089),
    450: (1.0070058, 44.00842613),
    500: (1.038428014, 45.14322051),
    550: (1.017284476, 41.08688757),
    600: (1.042790358, 41.30221291),
    650: (1.014605804, 38.1800532),
    700: (1.027297114, 38.03399768),
    750: (1.012645994, 35.57956117),
    800: (1.015832638, 35.25149408),
    850: (1.018652839, 33.28723503),
    900: (1.0070058, 31.4036155),
    950: (1.023420701, 31.27321466),
    1000: (1.012645994, 29.73405416),
}

# (n, sd, sd_corrected, sigma_mean_signcount, sigma_signcount)
TABLE3_REFERENCE = {
    200: (4.992413159, 5.004941192, 5.205401325, 4.895457577),
    400: (5.070626042, 5.076976234, 5.199795652, 4.835655399),  # sd, sd_corrected, mean_signcount: oracle repin
    600: (5.10523925, 5.109498942, 5.211046737, 4.855457413),
    800: (5.106390271, 5.109584761, 5.19369988, 4.92581015),
    1000: (5.066642282, 5.069177505, 5.200703028, 4.944169095),  # mean_signcount: oracle repin
    1200: (5.072294934, 5.074409712, 5.235885276, 4.935995814),
    1400: (5.081110418, 5.082926073, 5.249446371, 4.96528786),
    1600: (5.079219075, 5.080807075, 5.216158922, 4.9564705),  # mean_signcount: oracle repin
    1800: (5.060850283, 5.06225666, 5.207913228, 4.963326232),
    2000: (5.063112113, 5.064378366, 5.239119585, 4.981223889),
}

# exactly rounded standard normal CDF at -1 and -2 (60-digit oracle)
PHI_AT_M1 = 0.15865525393145705
PHI_AT_M2 = 0.02275013194817921

ROUND_TRIP_GRID = (
    1e-06, 1e-05, 1e-04, 1e-03, 1e-02, 0.1, 0.25, 0.5,
    0.75, 0.9, 0.99, 0.999, 0.9999, 0.99999, 0.999999,
)


def _compare_table(report_rows, reference, tolerances):
    worst = [0.0] * len(tolerances)
    for row in report_rows:
        ref = reference[row[0]]
        for j, (got, want, tol) in enumerate(zip(row[1:], ref, tolerances)):
            if not isinstance(got, float):
                return False, f"n={row[0]} col{j + 1} is {got!r}", worst
            worst[j] = max(worst[j], abs(got - want))
    ok = all(w <= t for w, t in zip(worst, tolerances))
    return ok, "max|dev| per column: " + ", ".join(f"{w:.2e}" for w in worst), worst


def check_table1_reproduction() -> CheckResult:
    t0 = time.perf_counter()
    report = run_experiment(builtin_config(Table.TABLE1))
    elapsed = time.perf_counter() - t0
    ok, detail, _ = _compare_table(report.rows, TABLE1_REFERENCE, (1e-4, 1e-4))
    ok = ok and elapsed < 1.0
    return CheckResult("table1-reproduction", ok, f"{detail}; runtime {elapsed:.3f}s < 1s", elapsed)


def check_table2_reproduction() -> CheckResult:
    t0 = time.perf_counter()
    report = run_experiment(builtin_config(Table.TABLE2))
    elapsed = time.perf_counter() - t0
    ok, detail, _ = _compare_table(report.rows, TABLE2_REFERENCE, (1e-4, 0.1))
    ok = ok and elapsed < 1.0
    return CheckResult("table2-reproduction", ok, f"{detail}; runtime {elapsed:.3f}s < 1s", elapsed)


def check_table3_reproduction() -> CheckResult:
    t0 = time.perf_counter()
    report = run_experiment(builtin_config(Table.TABLE3))
    elapsed = time.perf_counter() - t0
    ok, detail, _ = _compare_table(report.rows, TABLE3_REFERENCE, (1e-4,) * 4)
    ok = ok and elapsed < 1.0
    return CheckResult("table3-reproduction", ok, f"{detail}; runtime {elapsed:.3f}s < 1s", elapsed)


def check_consistency_sweep() -> CheckResult:
    targets = {0.0: 0.5, 1.0: PHI_AT_M1, 2.0: PHI_AT_M2}
    t0 = time.perf_counter()
    worst = 0.0
    for theta, target in targets.items():
        window = sample_via_weyl(DistributionSpec(Kind.GAUSSIAN, theta, 1.0), 100_000)
        worst = max(worst, abs(cdf_point_estimate(window, 0.0) - target))
    elapsed = time.perf_counter() - t0
    ok = worst <= 0.007 and elapsed < 2.0
    return CheckResult("consistency-sweep", ok,
                       f"max|estimate - Phi(-theta)| = {worst:.2e} <= 0.007; "
                       f"runtime {elapsed:.3f}s < 2s", elapsed)


def check_heavy_tail_contrast() -> CheckResult:
    t0 = time.perf_counter()
    window = sample_via_weyl(DistributionSpec(Kind.CAUCHY, 1.0, 1.0), 1000)
    sc = sign_count_estimate(window, DistributionSpec(Kind.CAUCHY))
    mean = sample_mean(window)
    elapsed = time.perf_counter() - t0
    ok = abs(sc - 1.0) <= 0.05 and abs(mean - 1.0) >= 1.0
    return CheckResult("heavy-tail-contrast", ok,
                       f"|sign_count - 1| = {abs(sc - 1):.4f} <= 0.05; "
                       f"|mean - 1| = {abs(mean - 1):.2f} >= 1", elapsed)


def check_kernel_convergence() -> CheckResult:
    t0 = time.perf_counter()
    grid = np.linspace(-4.0, 4.0, 101)
    phi = np.exp(-0.5 * grid * grid) / np.sqrt(2 * np.pi)
    window = sample_via_weyl(DistributionSpec(Kind.GAUSSIAN), 100_000)
    err5 = np.abs(kernel_density_profile(window, grid) - phi).max()
    err3 = np.abs(kernel_density_profile(window.prefix(1000), grid) - phi).max()

    window35 = sample_via_weyl(DistributionSpec(Kind.GAUSSIAN, 3.0, 5.0), 100_000)
    cfg = SigmaEstimateConfig(known_mean=3.0, fallback_sigma=1.0, n0=50_000)
    sigma = sigma_kernel_estimate(window35, cfg)
    elapsed = time.perf_counter() - t0
    ok = err5 <= 0.02 and err5 < err3 and abs(sigma - 5.0) <= 0.5 and elapsed < 10.0
    return CheckResult("kernel-convergence", ok,
                       f"sup-err N=1e5: {err5:.4f} <= 0.02, N=1e3: {err3:.4f}; "
                       f"sigma_kernel = {sigma:.3f} in 5 +- 0.5; runtime {elapsed:.2f}s < 10s",
                       elapsed)


def check_quantile_round_trip() -> CheckResult:
    t0 = time.perf_counter()
    worst = 0.0
    for spec in (DistributionSpec(Kind.GAUSSIAN), DistributionSpec(Kind.CAUCHY)):
        for u in ROUND_TRIP_GRID:
            worst = max(worst, abs(cdf(spec, quantile(spec, u)) - u))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-9
    return CheckResult("quantile-round-trip", ok,
                       f"max|cdf(quantile(u)) - u| = {worst:.2e} <= 1e-9", elapsed)


def _expected_verdict(finite: bool, countable: bool, has_half: bool) -> ObjectivityVerdict:
    # direct statement of the two existence conditions
    if has_half or not countable:
        return ObjectivityVerdict.NO_OBJECTIVE_ESTIMATE
    if finite:
        return ObjectivityVerdict.STRONG_OBJECTIVE_EXISTS
    return ObjectivityVerdict.OBJECTIVE_EXISTS_NOT_STRONG


def check_coin_group() -> CheckResult:
    t0 = time.perf_counter()
    problems = []

    frac = prevalence_monte_carlo(0.02, 10_000, 10_000, seed=3)
    if frac < 0.99:
        problems.append(f"prevalence fraction {frac} < 0.99")

    worst = 0.0
    for theta in (0.1, 0.3, 0.5, 0.7, 0.9):
        for seed in range(10):
            seq = bernoulli_sample(theta, 100_000, seed)
            est = cesaro_estimate(seq, 0.123456789, convergence_tol=0.05)
            worst = max(worst, abs(est - theta))
    if worst > 0.01:
        problems.append(f"cesaro worst error {worst:.4f} > 0.01")

    fixtures = [
        (ParameterSetDescriptor(SetCardinality.FINITE_LIST, (0.3, 0.7)),
         ObjectivityVerdict.STRONG_OBJECTIVE_EXISTS),
        (ParameterSetDescriptor(SetCardinality.COUNTABLY_INFINITE, contains_half=False),
         ObjectivityVerdict.OBJECTIVE_EXISTS_NOT_STRONG),
        (ParameterSetDescriptor(SetCardinality.FINITE_LIST, (0.5, 0.9), contains_half=True),
         ObjectivityVerdict.NO_OBJECTIVE_ESTIMATE),
    ]
    rng = np.random.default_rng(20240)
    for _ in range(20):
        size = int(rng.integers(2, 7))
        elems = list(np.round(rng.uniform(0.01, 0.99, size=size), 6))
        has_half = bool(rng.integers(0, 2))
        if has_half:
            elems[0] = 0.5
        elems = tuple(dict.fromkeys(float(e) for e in elems))
        if len(elems) < 2:
            elems = (0.25, 0.75) if not has_half else (0.5, 0.75)
        desc = ParameterSetDescriptor(SetCardinality.FINITE_LIST, elems,
                                      contains_half=0.5 in elems)
        fixtures.append((desc, _expected_verdict(True, True, 0.5 in elems)))
    for desc, want in fixtures:
        got = classify_objectivity(desc)
        if got is not want:
            problems.append(f"classifier: {desc} -> {got}, expected {want}")

    elapsed = time.perf_counter() - t0
    ok = not problems and elapsed < 30.0
    detail = "; ".join(problems) if problems else (
        f"prevalence {frac:.4f} >= 0.99, cesaro worst {worst:.4f} <= 0.01, "
        f"classifier 23/23; runtime {elapsed:.1f}s < 30s")
    return CheckResult("coin-group", ok, detail, elapsed)


def check_brute_force_oracles() -> CheckResult:
    t0 = time.perf_counter()
    rng = np.random.default_rng(987)
    prov = Provenance(GeneratorKind.PSEUDO_RANDOM, DistributionSpec(Kind.GAUSSIAN), seed=987)
    problems = []
    for _ in range(100):
        n = int(rng.integers(1, 21))
        values = rng.standard_normal(n) * rng.uniform(0.5, 3.0)
        window = SampleWindow(values, prov)
        x_star = float(rng.standard_normal())
        tr = trace(window, x_star)
        naive = [sum(1 for v in values[:m] if v <= x_star) / m for m in range(1, n + 1)]
        if list(tr.values) != naive:
            problems.append("trace != naive recomputation")
            break
        n0 = int(rng.integers(1, n + 1))
        sup, inf = tail_extrema(tr, n0)
        if sup != max(naive[n0 - 1:]) or inf != min(naive[n0 - 1:]):
            problems.append("tail_extrema != naive max/min")
            break
        depth = int(rng.integers(1, n + 1))
        exact = Fraction(0)
        for k in range(1, depth + 1):
            if values[k - 1] > 0:
                exact += Fraction(1, 2 ** k)
        if binary_shadow(window, depth) != float(exact):
            problems.append("binary_shadow != exact dyadic sum")
            break
    elapsed = time.perf_counter() - t0
    ok = not problems
    return CheckResult("brute-force-oracles", ok,
                       problems[0] if problems else "100 random windows, exact agreement",
                       elapsed)


def check_determinism() -> CheckResult:
    t0 = time.perf_counter()
    problems = []
    for which in Table:
        cfg = builtin_config(which)
        base = emit_report(run_experiment(cfg), "csv")
        again = emit_report(run_experiment(cfg), "csv")
        threaded = emit_report(run_experiment(replace(cfg, workers=4)), "csv")
        if base != again:
            problems.append(f"{which.name}: two runs differ")
        if base != threaded:
            problems.append(f"{which.name}: threaded run differs")
    elapsed = time.perf_counter() - t0
    return CheckResult("determinism", not problems,
                       "; ".join(problems) if problems else
                       "byte-identical CSV for all built-in configs (workers 1 and 4)",
                       elapsed)


CHECKS = (
    check_table1_reproduction,
    check_table2_reproduction,
    check_table3_reproduction,
    check_consistency_sweep,
    check_heavy_tail_contrast,
    check_kernel_convergence,
    check_quantile_round_trip,
    check_coin_group,
    check_brute_force_oracles,
    check_determinism,
)


def run_all() -> list[CheckResult]:
    """Run every acceptance check in order."""
    return [check() for check in CHECKS]
