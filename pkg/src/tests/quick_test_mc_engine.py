#!/usr/bin/env python3
"""
Monte Carlo Engine Test Script
=========================

Quick test of the seeded Gaussian streams, the replication manager and the
theoretical vs empirical randomized error. Statistical checks use fixed seeds
and 4-standard-error bands.
"""

import math

import numpy as np
import pytest
from pydantic import ValidationError
from scipy.special import ndtri

from src.errors import ContractError
from src.mc.mc_engine import (
    empirical_randomized_error,
    mc_estimate,
    theoretical_error,
    true_integral,
    unrooted_error,
)
from src.mc.replication_manager import ReplicationManager, resolve_threads
from src.mc.schemas import ErrorReport
from src.mc.rng import GOLDEN_GAMMA, sample_gaussian, splitmix64, stream_seed, uniform_open
from src.kernel.kernel_space import worst_case_function
from src.spaces.schemas import AnalyticSpace, FiniteSmoothnessSpace


def _within_band(report, expected_mse: float, width: float = 4.0) -> bool:
    return abs(report.empirical_mse - expected_mse) <= width * report.empirical_stderr


def test_seed_streams():
    """SplitMix64 reference outputs and stream derivation."""
    print("🌱 TESTING SEED STREAMS")
    print("=" * 40)

    # Reference sequence of SplitMix64 seeded with 0
    assert splitmix64(0) == 0xE220A8397B1DCDAF
    assert splitmix64(GOLDEN_GAMMA) == 0x6E789E6AA1B965F4
    assert stream_seed(0, 1) == 0x6E789E6AA1B965F4
    assert len({stream_seed(42, i) for i in range(1, 1001)}) == 1000
    print("✅ Stream seeds OK")


def test_gaussian_sampling():
    """Determinism, shape and the first two moments of the sampler."""
    print("\n🎲 TESTING GAUSSIAN SAMPLING")
    print("=" * 40)

    edges = uniform_open(np.array([0, (1 << 64) - 1], dtype=np.uint64))
    assert edges[0] == 2.0 ** -53
    assert edges[1] == 1.0 - 2.0 ** -53
    assert np.all(np.isfinite(ndtri(edges)))

    # top words that differ in the kept bits map to distinct values below 1
    top = np.array([(1 << 64) - 1 - i * 4096 for i in range(8)], dtype=np.uint64)
    top_u = uniform_open(top)
    assert len(set(top_u.tolist())) == 8
    assert np.all(top_u < 1.0)

    first = sample_gaussian(3, 100, stream_seed(42, 1))
    assert first.shape == (100, 3)
    assert np.array_equal(first, sample_gaussian(3, 100, stream_seed(42, 1)))
    assert not np.array_equal(first, sample_gaussian(3, 100, stream_seed(42, 2)))

    draws = sample_gaussian(1, 200_000, 12345).ravel()
    count = len(draws)
    assert abs(draws.mean()) <= 4.0 / math.sqrt(count)
    assert abs(draws.var() - 1.0) <= 4.0 * math.sqrt(2.0 / count)

    with pytest.raises(ContractError):
        sample_gaussian(0, 10, 1)
    print("✅ Sampler OK")


def test_replication_manager():
    """Results come back in replication order for any thread count."""
    print("\n🧵 TESTING REPLICATION MANAGER")
    print("=" * 40)

    expected = np.arange(1, 1001, dtype=float)
    for threads in [1, 4, 0]:
        manager = ReplicationManager(threads=threads, chunk_size=37)
        assert np.array_equal(manager.run(lambda i: float(i), 1000), expected)

    assert resolve_threads(3) == 3
    assert resolve_threads(0) >= 1
    with pytest.raises(ValueError):
        resolve_threads(-1)
    print("✅ Order preserved")


def test_mc_estimate():
    print("\n📏 TESTING MC ESTIMATE")
    print("=" * 40)

    nodes = np.array([[0.0], [1.0], [2.0], [3.0]])
    assert mc_estimate(lambda x: np.full(len(x), 2.5), nodes).value == 2.5
    estimate = mc_estimate(lambda x: x[:, 0], nodes)
    assert estimate.value == 1.5 and estimate.n == 4 and not estimate.flagged

    poisoned = mc_estimate(lambda x: np.where(x[:, 0] > 1, np.nan, 1.0), nodes)
    assert math.isnan(poisoned.value)
    assert poisoned.non_finite == 2 and poisoned.flagged
    assert mc_estimate(lambda x: np.where(x[:, 0] > 2, np.inf, 1.0), nodes).value == math.inf
    with pytest.raises(ContractError):
        mc_estimate(lambda x: x[:, 0], np.empty((0, 1)))
    print("✅ Estimator OK")


def test_theoretical_error():
    """e(n, s) = sqrt(max_{k != 0} r(k) / n)."""
    print("\n📐 TESTING THEORETICAL ERROR")
    print("=" * 40)

    space = FiniteSmoothnessSpace(s=2, alpha=2.0, gamma=[0.9, 0.5])
    assert theoretical_error(space, 100) == math.sqrt(0.9 / 100)
    assert theoretical_error(FiniteSmoothnessSpace(s=3, alpha=2.0, gamma=1.0), 100) == 0.1

    analytic = AnalyticSpace(s=2, omega=0.5, a=[2.0, 1.0], b=[1.0, 3.0])
    assert theoretical_error(analytic, 1000) == math.sqrt(0.5 / 1000)
    assert unrooted_error(analytic, 100) == 0.05

    assert true_integral(worst_case_function(space)) == 0.0
    with pytest.raises(ContractError):
        theoretical_error(space, 0)
    print("✅ Closed-form errors OK")


def test_error_study_finite_smoothness():
    """Empirical MSE within 4 stderr of 0.9 / n for gamma = (0.9, 0.5)."""
    print("\n🔬 TESTING ERROR STUDY (FINITE SMOOTHNESS)")
    print("=" * 40)

    space = FiniteSmoothnessSpace(s=2, alpha=2.0, gamma=[0.9, 0.5])
    for n in [100, 1000]:
        report = empirical_randomized_error(space, n, 10_000, master_seed=42)
        print(f"   n={n}: mse={report.empirical_mse:.4e} (expected {0.9 / n:.4e}, stderr {report.empirical_stderr:.2e})")
        assert report.theoretical_error == math.sqrt(0.9 / n)
        assert report.worst_case_index == [1, 0]
        assert report.unrooted_error is None
        assert _within_band(report, 0.9 / n)
        assert abs(report.mean_bias) <= 4.0 * report.bias_stderr
    print("✅ Randomized error reproduced")


def test_error_study_analytic():
    """Empirical MSE within 4 stderr of 0.5 / 1000; worst case at (0, 1)."""
    print("\n🔬 TESTING ERROR STUDY (ANALYTIC)")
    print("=" * 40)

    space = AnalyticSpace(s=2, omega=0.5, a=[2.0, 1.0], b=[1.0, 3.0])
    report = empirical_randomized_error(space, 1000, 10_000, master_seed=42)
    assert report.worst_case_index == [0, 1]
    assert report.unrooted_error == 0.5 / math.sqrt(1000)
    assert _within_band(report, 0.5 / 1000)
    print("✅ Randomized error reproduced")


def test_rate():
    """rmse * sqrt(n) stays at 1 for the unweighted space, s = 5."""
    print("\n📉 TESTING n^(-1/2) RATE")
    print("=" * 40)

    space = FiniteSmoothnessSpace(s=5, alpha=2.0, gamma=1.0)
    bands = []
    for n in [100, 1000, 10_000]:
        report = empirical_randomized_error(space, n, 2_000, master_seed=7)
        low = math.sqrt(max(report.empirical_mse - 3 * report.empirical_stderr, 0.0) * n)
        high = math.sqrt((report.empirical_mse + 3 * report.empirical_stderr) * n)
        print(f"   n={n}: rmse*sqrt(n) in [{low:.4f}, {high:.4f}]")
        bands.append((low, high))
    assert max(low for low, _ in bands) <= min(high for _, high in bands)
    print("✅ Rate confirmed")


def test_determinism_across_threads():
    """Thread count never changes the report."""
    print("\n🔒 TESTING DETERMINISM")
    print("=" * 40)

    space = AnalyticSpace(s=3, omega=0.7, a=1.0, b=1.0)
    rows = [empirical_randomized_error(space, 50, 300, master_seed=9, threads=threads).to_row()
            for threads in [1, 4, 0]]
    assert rows[0] == rows[1] == rows[2]
    assert 'wall_time_ms' not in rows[0]
    print("✅ Identical reports")


def test_error_study_contracts():
    print("\n🚫 TESTING ERROR STUDY CONTRACTS")
    print("=" * 40)

    space = FiniteSmoothnessSpace(s=1, alpha=2.0, gamma=1.0)
    with pytest.raises(ContractError):
        empirical_randomized_error(space, 10, 1)
    with pytest.raises(ContractError):
        empirical_randomized_error(space, 0, 10)

    report = empirical_randomized_error(space, 10, 20, master_seed=1)
    assert report.content_hash() == empirical_randomized_error(space, 10, 20, master_seed=1).content_hash()
    assert 'wall_time_ms' in report.to_row(timing=True)
    tampered = {**report.model_dump(by_alias=True), "empirical_rmse": report.empirical_rmse * 2 + 1.0}
    with pytest.raises(ValidationError):
        ErrorReport.model_validate(tampered)
    print("✅ Contracts enforced")


def main():
    """Run all tests."""
    print("🚀 MONTE CARLO ENGINE TESTS")
    print("=" * 50)

    try:
        test_seed_streams()
        test_gaussian_sampling()
        test_replication_manager()
        test_mc_estimate()
        test_theoretical_error()
        test_error_study_finite_smoothness()
        test_error_study_analytic()
        test_rate()
        test_determinism_across_threads()
        test_error_study_contracts()

        print(f"\n🎉 ALL TESTS PASSED!")

    except Exception as e:
        print(f"\n💥 TEST FAILED: {e}")
        import traceback
        traceback.print_exc()


if __name__ == "__main__":
    main()
