"""Finite-shot estimation of the predictability criterion.

Outcome pairs are drawn by inverse-CDF sampling from the exact joint
distribution of each basis pair, so runs are deterministic for a fixed seed
and the estimates are unbiased.  Standard errors come from the binomial
variance of each per-basis estimate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .criteria import joint_probabilities
from .mubs import Basis, MubSet
from .qmath import _as_rng


def sample_joint_counts(rho: np.ndarray, basis_a: Basis, basis_b: Basis,
                        shots: int, rng) -> np.ndarray:
    """Outcome-pair counts from ``shots`` joint measurements."""
    if shots < 1:
        raise ValueError("shots must be at least 1")
    rng = _as_rng(rng)
    probs = joint_probabilities(rho, basis_a, basis_b).ravel()
    probs = np.clip(probs, 0.0, None)
    cdf = np.cumsum(probs / probs.sum())
    draws = np.searchsorted(cdf, rng.random(shots), side="right")
    counts = np.bincount(draws, minlength=probs.size)
    return counts.reshape(basis_a.dim, basis_b.dim)


@dataclass(frozen=True)
class SampledCriterion:
    """Shot-based estimate of the criterion with binomial standard errors."""

    c_estimates: tuple[float, ...]
    c_errors: tuple[float, ...]
    total: float
    total_error: float
    bound: float
    shots: int


def estimate_criterion(rho: np.ndarray, mub_a: MubSet,
                       mub_b: MubSet | None = None, *,
                       shots: int, seed=None) -> SampledCriterion:
    """Estimate each per-basis correlation from finite statistics.

    The B side defaults to the conjugate set, matching the exact evaluator.
    The total's standard error combines the independent per-basis binomial
    errors in quadrature.
    """
    mub_b = mub_a.conjugate() if mub_b is None else mub_b
    rng = _as_rng(seed)
    estimates, errors = [], []
    for basis_a, basis_b in zip(mub_a, mub_b):
        counts = sample_joint_counts(rho, basis_a, basis_b, shots, rng)
        c_hat = float(np.trace(counts)) / shots
        estimates.append(c_hat)
        errors.append(float(np.sqrt(c_hat * (1.0 - c_hat) / shots)))
    total = float(sum(estimates))
    total_err = float(np.sqrt(sum(e * e for e in errors)))
    bound = 1.0 + (mub_a.count - 1) / mub_a.dim
    return SampledCriterion(
        tuple(estimates), tuple(errors), total, total_err, bound, shots
    )
