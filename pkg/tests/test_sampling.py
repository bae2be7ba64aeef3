import numpy as np
import pytest

from mubkit import (
    estimate_criterion,
    isotropic_state,
    maximally_mixed,
    sample_joint_counts,
)


def test_counts_sum_to_shots(mub_cache, rng):
    mub = mub_cache(3)
    counts = sample_joint_counts(isotropic_state(3, 0.5), mub[1],
                                 mub[1].conjugate(), 500, rng)
    assert counts.shape == (3, 3)
    assert counts.sum() == 500


def test_single_shot_estimates_are_binary(mub_cache):
    est = estimate_criterion(maximally_mixed(4), mub_cache(2), shots=1, seed=9)
    assert all(c in (0.0, 1.0) for c in est.c_estimates)


def test_seed_determinism(mub_cache):
    a = estimate_criterion(isotropic_state(2, 0.7), mub_cache(2), shots=200, seed=5)
    b = estimate_criterion(isotropic_state(2, 0.7), mub_cache(2), shots=200, seed=5)
    assert a == b


def test_deterministic_distribution_has_zero_error(mub_cache):
    # perfectly correlated state: every draw lands on the diagonal
    est = estimate_criterion(isotropic_state(2, 1.0), mub_cache(2),
                             shots=1000, seed=3)
    assert est.total == 3.0
    assert est.total_error == 0.0


def test_estimates_converge_to_exact_value(mub_cache):
    rho = isotropic_state(2, 0.5)
    exact = 3 * (0.5 + 0.5 / 2)
    est = estimate_criterion(rho, mub_cache(2), shots=200_000, seed=17)
    assert abs(est.total - exact) < 4 * est.total_error + 1e-9
    assert est.bound == 2.0


def test_standard_error_scaling(mub_cache):
    rho = isotropic_state(2, 0.5)
    small = estimate_criterion(rho, mub_cache(2), shots=1_000, seed=2)
    large = estimate_criterion(rho, mub_cache(2), shots=100_000, seed=2)
    assert large.total_error < small.total_error / 5


def test_invalid_shots(mub_cache):
    with pytest.raises(ValueError):
        estimate_criterion(maximally_mixed(4), mub_cache(2), shots=0, seed=0)


def test_estimator_is_unbiased_across_seeds(mub_cache):
    rho = isotropic_state(2, 0.3)
    exact = 3 * (0.3 + 0.7 / 2)
    totals = [estimate_criterion(rho, mub_cache(2), shots=2000, seed=s).total
              for s in range(40)]
    assert abs(np.mean(totals) - exact) < 0.02
