import json
import math
from statistics import NormalDist

import mpmath
import pytest
from scipy import stats as sps

from invofact.counting import (
    count_factorizations,
    log_count,
    log_product_of_cycle_lengths,
    product_of_cycle_lengths,
)
from invofact.permutation import CycleType
from invofact.sampling import SeededRng
from invofact.stats import (
    SandwichViolation,
    clt_experiment,
    clt_values,
    histogram,
    ks_statistic,
    large_k_bound,
    mu,
    mu_asymptotic,
    normal_cdf,
    sample_cycle_types,
    sandwich_check,
    sandwich_hypotheses,
    sigma,
    sigma_asymptotic,
    small_k_crowd,
    tail_experiment,
)


def test_mu_sigma_small():
    assert mu(1) == 0 and sigma(1) == 0
    assert mu(2) == pytest.approx(math.log(2) / 2, rel=1e-15)
    assert sigma(2) ** 2 == pytest.approx(math.log(2) ** 2 / 2, rel=1e-15)
    with pytest.raises(ValueError):
        mu(0)


def log_power_sum(n, m):
    """sum_{k<=n} log(k)^m / k via Stieltjes constants and Euler-Maclaurin tail terms."""
    with mpmath.workdps(40):
        n = mpmath.mpf(n)
        L = mpmath.log(n)
        f = L**m / n
        df = (m * L ** (m - 1) - L**m) / n**2 if m else -1 / n**2
        return L ** (m + 1) / (m + 1) + mpmath.stieltjes(m) + f / 2 + df / 12


def test_mu_sigma_against_closed_form():
    n = 10**6
    assert abs(mu(n) / float(log_power_sum(n, 1)) - 1) <= 1e-10
    assert abs(sigma(n) ** 2 / float(log_power_sum(n, 2)) - 1) <= 1e-10


def test_mu_sigma_asymptotics():
    assert abs(mu(10**6) / mu_asymptotic(10**6) - 1) <= 0.25
    r3 = sigma(10**3) ** 2 / sigma_asymptotic(10**3) ** 2
    r6 = sigma(10**6) ** 2 / sigma_asymptotic(10**6) ** 2
    assert abs(r6 - 1) < abs(r3 - 1)


def test_normal_cdf():
    assert normal_cdf(0) == 0.5
    for x in (0.5, 1, 2, 3):
        assert normal_cdf(x) + normal_cdf(-x) == pytest.approx(1, abs=1e-15)
    ref = mpmath.quad(lambda t: mpmath.exp(-t * t / 2), [-mpmath.inf, 1.96]) / mpmath.sqrt(2 * mpmath.pi)
    assert abs(normal_cdf(1.96) - float(ref)) < 1e-12
    assert abs(normal_cdf(1.96) - 0.9750) <= 1e-4


def test_normal_cdf_accuracy_grid():
    for i in range(-160, 161):
        x = i / 20
        assert abs(normal_cdf(x) - float(mpmath.ncdf(x))) <= 1e-7


def test_ks_statistic():
    assert ks_statistic([0.0]) == 0.5
    m = 1000
    inv = NormalDist().inv_cdf
    quantiles = [inv((i - 0.5) / m) for i in range(1, m + 1)]
    assert ks_statistic(quantiles) == pytest.approx(1 / (2 * m), abs=1e-12)
    with pytest.raises(ValueError):
        ks_statistic([])


def test_ks_statistic_normal_sample():
    rng = SeededRng(4)
    inv = NormalDist().inv_cdf
    xs = sorted(inv((rng.next_u64() + 0.5) / 2**64) for _ in range(10**5))
    d = ks_statistic(xs)
    assert d <= 0.006
    assert d == pytest.approx(sps.kstest(xs, "norm").statistic, abs=1e-12)


def test_histogram():
    bins = histogram([-7.0, -5.0, -4.9, 0.0, 0.1, 4.99, 5.0, 9.0])
    assert len(bins) == 42
    assert bins[0] == (-math.inf, 1)
    assert bins[1] == (-5.0, 2)
    assert bins[-1] == (5.0, 2)
    assert sum(c for _, c in bins) == 8


def test_clt_two_points():
    report = clt_experiment(2, 100000, seed=1, statistic="logB")
    counts = [c for _, c in report.histogram if c]
    assert len(counts) == 2
    assert all(abs(c / 100000 - 0.5) <= 0.01 for c in counts)
    assert set(clt_values(2, 1000, 1, "logB")) == {0.0, math.log(2)}
    # N = 2 for both elements of S_2
    assert set(clt_values(2, 1000, 1)) == {math.log(2)}


def test_clt_log_n_dominates_log_b():
    a = clt_values(1000, 2000, seed=3, statistic="logN")
    b = clt_values(1000, 2000, seed=3, statistic="logB")
    assert all(x >= y for x, y in zip(a, b))
    with pytest.raises(ValueError):
        clt_values(10, 10, 1, statistic="logX")


def test_clt_values_follow_sample_cycle_types():
    types = sample_cycle_types(500, 2500, seed=9)
    assert clt_values(500, 2500, 9) == [log_count(t) for t in types]
    assert clt_values(500, 2500, 9, "logB") == [log_product_of_cycle_lengths(t) for t in types]


def test_clt_reproducible_and_thread_independent():
    a = clt_experiment(300, 3500, seed=11, threads=1)
    b = clt_experiment(300, 3500, seed=11, threads=1)
    c = clt_experiment(300, 3500, seed=11, threads=3)
    assert json.dumps(a.to_dict()) == json.dumps(b.to_dict()) == json.dumps(c.to_dict())
    assert sum(count for _, count in a.histogram) == 3500
    assert 0 <= a.ks_distance <= 1


def test_tail_experiment():
    report = tail_experiment(10**4, 30, 10**4, seed=7)
    bound = sum(1 / k**2 for k in range(30, 5001))
    assert report.bound_large_k == pytest.approx(bound, rel=1e-12)
    assert report.freq_large_k_repeat <= bound + 3 * report.standard_error
    assert report.freq_small_k_crowd == 0


def test_tail_boundaries():
    report = tail_experiment(100, 100, 2000, seed=1)
    assert report.freq_large_k_repeat == 0
    assert report.freq_small_k_crowd == 0
    report = tail_experiment(10**4, 1, 1000, seed=1)
    assert report.bound_large_k == pytest.approx(math.pi**2 / 6 - 1 / 5000, abs=1e-6)
    assert 0 <= report.freq_large_k_repeat <= 1
    assert large_k_bound(10, 6) == 0
    with pytest.raises(ValueError):
        tail_experiment(10, 11, 10, 1)


def test_small_k_crowd_rounding():
    # k <= floor(xi), c_k >= ceil(xi)
    assert small_k_crowd(CycleType({2: 3}), 2.5)
    assert not small_k_crowd(CycleType({2: 2}), 2.5)
    assert not small_k_crowd(CycleType({3: 3}), 2.5)


def test_sandwich_hypotheses():
    assert sandwich_hypotheses(CycleType({1: 2, 7: 1}), 3)
    assert not sandwich_hypotheses(CycleType({5: 2}), 3)
    assert not sandwich_hypotheses(CycleType({1: 4}), 3)


def test_sandwich_single_cycle():
    t = CycleType({10**4: 1})
    assert count_factorizations(t) == product_of_cycle_lengths(t) == 10**4


def test_sandwich_check_small():
    xi = math.sqrt(math.log(10**4))
    report = sandwich_check(10**4, xi, 5000, seed=5)
    assert report.lower_bound_violations == report.upper_bound_violations == 0
    assert 0 < report.hypothesis_fraction <= 1
    assert report.max_log_excess <= report.log_upper_margin


def test_sandwich_violation_is_reported():
    # a constant this small makes the upper bound fail whenever log(N/B) > 0
    with pytest.raises(SandwichViolation) as info:
        sandwich_check(50, 3, 2000, seed=1, c=1e-6)
    assert json.loads(str(info.value))["kind"] == "upper"
    report = sandwich_check(50, 3, 2000, seed=1, c=1e-6, strict=False)
    assert report.upper_bound_violations > 0
