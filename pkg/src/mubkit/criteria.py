"""Correlation-based entanglement criteria for bipartite qudit states.

The central quantity is the mutual predictability: the probability that
joint local measurements in a pair of bases produce equal outcome labels.
Summed over m mutually unbiased basis pairs it is bounded by 1 + (m - 1)/d
for every separable state, so exceeding that bound certifies entanglement.
Non-violation certifies nothing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .config import TOL
from .mubs import Basis, MubSet, construct_mub_set, fourier_pair
from .numerics import bisect_boundary
from .qmath import DimensionError, maximally_entangled_state


@dataclass(frozen=True)
class CriterionReport:
    """Per-basis correlation values and the aggregate criterion verdict."""

    c_values: tuple[float, ...]
    total: float
    bound: float
    margin: float
    violated: bool

    @property
    def count(self) -> int:
        return len(self.c_values)


def _make_report(c_values, bound: float, margin_tol: float | None = None) -> CriterionReport:
    margin_tol = TOL.violation if margin_tol is None else margin_tol
    c_values = tuple(float(c) for c in c_values)
    total = float(sum(c_values))
    margin = total - bound
    return CriterionReport(c_values, total, bound, margin, margin > margin_tol)


def joint_probabilities_from_kets(rho: np.ndarray, kets_a: np.ndarray,
                                  kets_b: np.ndarray) -> np.ndarray:
    """P(i, j) = <a_i b_j| rho |a_i b_j> for row-stacked local kets."""
    da, db = kets_a.shape[0], kets_b.shape[0]
    prod = np.einsum("ix,jy->ijxy", kets_a, kets_b).reshape(da * db, -1)
    probs = np.einsum("px,xy,py->p", prod.conj(), rho, prod).real
    return probs.reshape(da, db)


def joint_probabilities(rho: np.ndarray, basis_a: Basis, basis_b: Basis) -> np.ndarray:
    """Joint outcome distribution of local measurements in two bases."""
    d = basis_a.dim
    if basis_b.dim != d:
        raise DimensionError("local bases must share one dimension")
    if rho.shape != (d * d, d * d):
        raise DimensionError(
            f"state of shape {rho.shape} does not match local dimension {d}"
        )
    return joint_probabilities_from_kets(rho, basis_a.vectors, basis_b.vectors)


def mutual_predictability(rho: np.ndarray, basis_a: Basis, basis_b: Basis) -> float:
    """Probability that both parties report the same outcome label."""
    d = basis_a.dim
    if basis_b.dim != d:
        raise DimensionError("local bases must share one dimension")
    if rho.shape != (d * d, d * d):
        raise DimensionError(
            f"state of shape {rho.shape} does not match local dimension {d}"
        )
    prod = np.einsum("ix,iy->ixy", basis_a.vectors, basis_b.vectors).reshape(d, -1)
    probs = np.einsum("px,xy,py->p", prod.conj(), rho, prod).real
    return float(probs.sum())


def optimal_relabeling(rho: np.ndarray, basis_a: Basis,
                       basis_b: Basis) -> tuple[float, np.ndarray]:
    """Best outcome pairing: max over permutations of sum_i P(i, sigma(i)).

    Solved as a linear assignment problem on the joint distribution.
    Relabeling leaves each basis unchanged as a set, so the maximized value
    is still a valid mutual predictability for the criterion.
    """
    probs = joint_probabilities(rho, basis_a, basis_b)
    rows, cols = linear_sum_assignment(-probs)
    perm = np.empty_like(cols)
    perm[rows] = cols
    return float(probs[rows, cols].sum()), perm


def predictability_criterion(rho: np.ndarray, mub_a: MubSet,
                             mub_b: MubSet | None = None, *,
                             relabel: bool = False) -> CriterionReport:
    """Sum of mutual predictabilities over m basis pairs, with its bound.

    The B side defaults to the conjugate of ``mub_a``, which is the pairing
    that maximally correlates isotropic-like states.  With ``relabel`` the
    outcome labels of each pair are optimized independently; both variants
    respect the separable bound 1 + (m - 1)/d.
    """
    mub_b = mub_a.conjugate() if mub_b is None else mub_b
    d = mub_a.dim
    if mub_b.dim != d or mub_b.count != mub_a.count:
        raise DimensionError("A and B sets must match in dimension and size")
    if relabel:
        c_values = [
            optimal_relabeling(rho, ba, bb)[0] for ba, bb in zip(mub_a, mub_b)
        ]
    else:
        c_values = [
            mutual_predictability(rho, ba, bb) for ba, bb in zip(mub_a, mub_b)
        ]
    bound = 1.0 + (mub_a.count - 1) / d
    return _make_report(c_values, bound)


def isotropic_state(dim: int, alpha: float) -> np.ndarray:
    """Maximally entangled state mixed with white noise.

    Positive semidefinite for -1/(d^2 - 1) <= alpha <= 1; entangled exactly
    when alpha > 1/(d + 1).
    """
    lo = -1.0 / (dim * dim - 1)
    if not lo - 1e-12 <= alpha <= 1 + 1e-12:
        raise ValueError(f"alpha = {alpha} outside the PSD range [{lo}, 1]")
    phi = maximally_entangled_state(dim)
    return alpha * np.outer(phi, phi.conj()) + (1 - alpha) / dim**2 * np.eye(dim**2)


def isotropic_threshold(dim: int, n_bases: int, mub: MubSet | None = None,
                        tol: float = 1e-9) -> float:
    """Critical noise weight above which the criterion flags isotropic states.

    Found by bisecting the violation predicate in alpha; analytically the
    threshold is 1/m for m basis pairs, reaching the exact separability
    boundary 1/(d + 1) for a complete set.
    """
    if n_bases < 2:
        raise ValueError("need at least two basis pairs to detect anything")
    if mub is None:
        mub = construct_mub_set(dim)
    if n_bases > mub.count:
        raise DimensionError(f"set has only {mub.count} bases, need {n_bases}")
    mub_a = MubSet(mub.bases[:n_bases])
    mub_b = mub_a.conjugate()

    def violated(alpha: float) -> bool:
        return predictability_criterion(isotropic_state(dim, alpha), mub_a, mub_b).violated

    return bisect_boundary(violated, 0.0, 1.0, tol=tol)


def schmidt_pair_criterion(coefficients: np.ndarray, dim: int) -> float:
    """Two-basis criterion value of a pure state from its Schmidt spectrum.

    Using the Schmidt bases for the first pair and the Fourier-conjugate
    partner for the second, the value is 1 + (1 + sum_{m != n}
    lambda_m lambda_n)/d.  It exceeds the bound 1 + 1/d exactly when at
    least two Schmidt coefficients are nonzero, so two mutually unbiased
    bases suffice to certify every entangled pure state.
    """
    lam = np.asarray(coefficients, dtype=float)
    if lam.ndim != 1 or lam.size > dim:
        raise DimensionError(f"need at most {dim} coefficients, got {lam.shape}")
    if (lam < -1e-12).any() or abs((lam**2).sum() - 1.0) > 1e-9:
        raise ValueError("Schmidt coefficients must be nonnegative with unit square sum")
    cross = float(lam.sum() ** 2 - (lam**2).sum())
    return 1.0 + (1.0 + cross) / dim


def schmidt_pair_criterion_direct(coefficients: np.ndarray, dim: int) -> float:
    """Same quantity evaluated from joint measurement probabilities.

    Builds the pure state with the given Schmidt spectrum in the
    computational basis and sums the mutual predictabilities of the
    (computational, computational) and (Fourier, conjugate Fourier) pairs.
    Serves as the independent cross-check of the closed form.
    """
    lam = np.asarray(coefficients, dtype=float)
    if lam.ndim != 1 or lam.size > dim:
        raise DimensionError(f"need at most {dim} coefficients, got {lam.shape}")
    psi = np.zeros(dim * dim, dtype=complex)
    for i, l in enumerate(lam):
        psi[i * dim + i] = l
    rho = np.outer(psi, psi.conj())
    comp, fourier = fourier_pair(dim)
    c_first = mutual_predictability(rho, comp, comp)
    c_second = mutual_predictability(rho, fourier, fourier.conjugate())
    return c_first + c_second


def weyl_operator(dim: int, k: int, l: int) -> np.ndarray:
    """Phase/shift unitary sum_s omega^{sk} |s><(s + l) mod d|."""
    if not (0 <= k < dim and 0 <= l < dim):
        raise DimensionError(f"indices ({k}, {l}) outside 0..{dim - 1}")
    w = np.zeros((dim, dim), dtype=complex)
    s = np.arange(dim)
    w[s, (s + l) % dim] = np.exp(2j * np.pi * s * k / dim)
    return w


def bell_state(dim: int, k: int, l: int) -> np.ndarray:
    """The d^2 orthonormal maximally entangled states (W_{k,l} x 1)|phi+>."""
    phi = maximally_entangled_state(dim)
    return np.kron(weyl_operator(dim, k, l), np.eye(dim, dtype=complex)) @ phi


def _validated_weights(weights: np.ndarray) -> np.ndarray:
    w = np.asarray(weights, dtype=float)
    if w.ndim != 2 or w.shape[0] != w.shape[1]:
        raise DimensionError(f"weights must be a d x d grid, got {w.shape}")
    if (w < -1e-12).any():
        raise ValueError("weights must be nonnegative")
    if abs(w.sum() - 1.0) > 1e-12:
        raise ValueError(f"weights must sum to 1, got {w.sum()!r}")
    return w


def bell_diagonal_state(weights: np.ndarray) -> np.ndarray:
    """Mixture of the d^2 Bell projectors with the given weight grid."""
    w = _validated_weights(weights)
    d = w.shape[0]
    rho = np.zeros((d * d, d * d), dtype=complex)
    for k in range(d):
        for l in range(d):
            if w[k, l] == 0.0:
                continue
            v = bell_state(d, k, l)
            rho += w[k, l] * np.outer(v, v.conj())
    return rho


def _alignment_permutation(basis: Basis, weyl: np.ndarray) -> np.ndarray:
    """Outcome permutation a Bell state induces between a basis and its conjugate.

    For the quadratic-phase families each displaced Bell state is perfectly
    correlated in every basis pair, so the joint distribution
    |<i|W|j>|^2 / d is supported on a single permutation.  Falls back to an
    assignment solve when the support is not an exact permutation.
    """
    m = np.abs(basis.vectors.conj() @ weyl @ basis.vectors.T) ** 2
    perm = m.argmax(axis=1)
    if len(set(perm.tolist())) != len(perm):
        rows, cols = linear_sum_assignment(-m)
        perm = np.empty_like(cols)
        perm[rows] = cols
    return perm


def enclosure_check(weights: np.ndarray, mub: MubSet) -> CriterionReport:
    """Complete-set criterion for Bell-diagonal states.

    Relabels outcomes coherently: each candidate labeling aligns every basis
    pair with one of the d^2 Bell states, and the best candidate is kept.
    Independent per-basis relabeling is deliberately not used here; it can
    exceed the aligned value and then no longer equals the closed form
    1 + h d (h the largest weight) that this check reproduces.  Violation
    (value > 2) corresponds to leaving the enclosure polytope h <= 1/d.
    """
    w = _validated_weights(weights)
    d = w.shape[0]
    if not mub.is_complete or mub.dim != d:
        raise DimensionError(
            f"need a complete set of {d + 1} bases in dimension {d}, "
            f"got {mub.count} in dimension {mub.dim}"
        )
    rho = bell_diagonal_state(w)
    joints = [
        joint_probabilities(rho, basis, basis.conjugate()) for basis in mub
    ]
    idx = np.arange(d)
    best: list[float] | None = None
    best_total = -np.inf
    for k in range(d):
        for l in range(d):
            weyl = weyl_operator(d, k, l)
            c_values = [
                float(p[idx, _alignment_permutation(basis, weyl)].sum())
                for basis, p in zip(mub, joints)
            ]
            total = sum(c_values)
            if total > best_total:
                best_total, best = total, c_values
    assert best is not None
    return _make_report(best, 2.0)
