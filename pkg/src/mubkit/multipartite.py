"""Detection of genuine multipartite entanglement via anti-correlations.

The totally antisymmetric n-party singlet is perfectly anti-correlated: all
n outcomes differ whenever every party measures in the same basis, and this
survives any common basis change.  Summing the anti-correlation probability
over m common mutually unbiased bases gives a quantity bounded by
1 + (m - 1)/n for biseparable states; a violation certifies genuine
multipartite entanglement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations
from typing import Sequence

import numpy as np

from .config import TOL
from .mubs import Basis, MubSet, construct_mub_set
from .numerics import bisect_boundary
from .qmath import DimensionError

DENSITY_SIZE_CAP = 512

MAX_PARTIES = 7


def levi_civita(indices: Sequence[int]) -> int:
    """Generalized Levi-Civita symbol: 0 on repeats, else the permutation sign."""
    n = len(indices)
    for idx in indices:
        if not 0 <= idx < n:
            raise ValueError(f"index {idx} outside 0..{n - 1}")
    if len(set(indices)) != n:
        return 0
    inversions = sum(
        1 for i in range(n) for j in range(i + 1, n) if indices[i] > indices[j]
    )
    return -1 if inversions % 2 else 1


@dataclass(frozen=True, eq=False)
class MultipartiteState:
    """n parties with equal local dimension; pure vector or density matrix."""

    parties: int
    dim: int
    data: np.ndarray

    def __post_init__(self):
        data = np.asarray(self.data, dtype=complex)
        size = self.dim**self.parties
        if data.ndim == 1:
            if data.size != size:
                raise DimensionError(
                    f"pure state has {data.size} amplitudes, expected {size}"
                )
        elif data.ndim == 2:
            if data.shape != (size, size):
                raise DimensionError(
                    f"density matrix shape {data.shape}, expected {(size, size)}"
                )
            if size > DENSITY_SIZE_CAP:
                raise DimensionError(
                    f"density representation capped at total dimension "
                    f"{DENSITY_SIZE_CAP}, got {size}"
                )
        else:
            raise DimensionError("state must be a vector or a square matrix")
        object.__setattr__(self, "data", data)

    @property
    def is_pure(self) -> bool:
        return self.data.ndim == 1


@dataclass(frozen=True)
class AntiCorrReport:
    """Per-basis anti-correlation values and the aggregate verdict."""

    a_values: tuple[float, ...]
    total: float
    bound: float
    margin: float
    violated: bool


def aharonov_state(n: int) -> MultipartiteState:
    """Totally antisymmetric n-party singlet of n-level systems.

    Exactly n! nonzero amplitudes of modulus 1/sqrt(n!), signs given by the
    permutation parity; for n = 2 this is the two-qubit singlet.
    """
    if not 2 <= n <= MAX_PARTIES:
        raise DimensionError(f"n = {n} outside supported range 2..{MAX_PARTIES}")
    amp = np.zeros(n**n, dtype=complex)
    norm = 1.0 / math.sqrt(math.factorial(n))
    weights = n ** np.arange(n - 1, -1, -1)
    for perm in permutations(range(n)):
        amp[int(np.dot(perm, weights))] = levi_civita(perm) * norm
    return MultipartiteState(n, n, amp)


def _permutation_indices(n: int) -> np.ndarray:
    return np.array(list(permutations(range(n))), dtype=np.intp)


def anticorrelation(state: MultipartiteState, bases: Sequence[Basis]) -> float:
    """Probability that all n local outcomes are pairwise distinct.

    Each party may use its own basis; the sum runs over the n! outcome
    tuples with nonzero Levi-Civita symbol and equals 1 exactly when the
    outcomes are always pairwise unequal.
    """
    n, d = state.parties, state.dim
    if len(bases) != n:
        raise DimensionError(f"need one basis per party ({n}), got {len(bases)}")
    if any(b.dim != d for b in bases):
        raise DimensionError(f"all bases must have dimension {d}")
    if d != n:
        raise DimensionError(
            f"anti-correlation needs local dimension equal to the party "
            f"count, got d = {d}, n = {n}"
        )
    tuples = _permutation_indices(n)
    if state.is_pure:
        amp = state.data.reshape((d,) * n)
        for axis in range(n):
            amp = np.moveaxis(
                np.tensordot(bases[axis].vectors.conj(), amp, axes=(1, axis)), 0, axis
            )
        return float((np.abs(amp[tuple(tuples.T)]) ** 2).sum())
    # density path: probabilities of the n! relevant product vectors
    kets = np.ones((len(tuples), 1), dtype=complex)
    for axis in range(n):
        rows = bases[axis].vectors[tuples[:, axis]]
        kets = np.einsum("pi,pj->pij", kets, rows).reshape(len(tuples), -1)
    probs = np.einsum("px,xy,py->p", kets.conj(), state.data, kets).real
    return float(probs.sum())


def anticorrelation_criterion(state: MultipartiteState, mub: MubSet) -> AntiCorrReport:
    """Anti-correlation sum over m common bases against the biseparable bound.

    Every party measures in the same basis, one basis per term; the bound
    for biseparable states is 1 + (m - 1)/n, so a violation certifies
    genuine multipartite entanglement.
    """
    n = state.parties
    if mub.dim != n or state.dim != n:
        raise DimensionError(
            f"set dimension {mub.dim} must equal party count and local "
            f"dimension (n = {n}, d = {state.dim})"
        )
    a_values = tuple(
        anticorrelation(state, [basis] * n) for basis in mub
    )
    total = float(sum(a_values))
    bound = 1.0 + (mub.count - 1) / n
    margin = total - bound
    return AntiCorrReport(a_values, total, bound, margin, margin > TOL.violation)


def white_noise_anticorrelation(n: int) -> float:
    """Anti-correlation of the maximally mixed n-party state: n!/n^n."""
    return math.factorial(n) / n**n


def aharonov_noise_threshold(n: int, m: int) -> float:
    """Critical singlet weight for detecting the noisy antisymmetric state.

    For alpha |S_n><S_n| + (1 - alpha)/n^n the criterion with m common
    mutually unbiased bases flags genuine multipartite entanglement exactly
    when alpha exceeds (n^n (m + n - 1) - m n n!) / (m n (n^n - n!)).
    """
    if not 2 <= n <= 12:
        raise ValueError(f"n = {n} outside supported range 2..12")
    if not 2 <= m <= n + 1:
        raise ValueError(f"m = {m} outside supported range 2..{n + 1}")
    fact = math.factorial(n)
    power = n**n
    return (power * (m + n - 1) - m * n * fact) / (m * n * (power - fact))


def aharonov_threshold_bisect(n: int, m: int, mub: MubSet | None = None,
                              tol: float = 1e-9) -> float:
    """Cross-check of the closed-form threshold by direct bisection.

    The criterion value of the noisy singlet is affine in alpha, so it is
    evaluated as alpha * J(pure) + (1 - alpha) * m n!/n^n without ever
    materializing the n^n-dimensional mixture; J(pure) is computed
    numerically from the antisymmetric state.
    """
    if n > 4:
        raise DimensionError("bisection cross-check supported for n <= 4")
    if mub is None:
        mub = construct_mub_set(n)
    if m > mub.count:
        raise DimensionError(f"set has only {mub.count} bases, need {m}")
    common = MubSet(mub.bases[:m])
    pure_total = anticorrelation_criterion(aharonov_state(n), common).total
    noise_total = m * white_noise_anticorrelation(n)
    bound = 1.0 + (m - 1) / n

    def violated(alpha: float) -> bool:
        value = alpha * pure_total + (1 - alpha) * noise_total
        return value - bound > TOL.violation

    return bisect_boundary(violated, 0.0, 1.0, tol=tol)
