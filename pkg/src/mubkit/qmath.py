"""Dense complex linear algebra and quantum-state primitives.

States are plain 1-D complex ndarrays, operators and density matrices are
2-D complex ndarrays.  Everything here is a pure function of its inputs;
randomness enters only through an explicit seed or generator.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import TOL

KRON_ENTRY_CAP = 10**8


class DimensionError(ValueError):
    """Inputs have incompatible or unsupported dimensions."""


def _as_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with a guard against runaway output sizes."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.size * b.size > KRON_ENTRY_CAP:
        raise DimensionError(
            f"kron output would have {a.size * b.size} entries "
            f"(cap {KRON_ENTRY_CAP})"
        )
    return np.kron(a, b)


def dagger(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(a, dtype=complex).conj().T


def basis_state(dim: int, index: int) -> np.ndarray:
    """Computational basis vector |index> in dimension ``dim``."""
    if not 0 <= index < dim:
        raise DimensionError(f"index {index} outside 0..{dim - 1}")
    vec = np.zeros(dim, dtype=complex)
    vec[index] = 1.0
    return vec


def maximally_entangled_state(dim: int) -> np.ndarray:
    """The state (1/sqrt(d)) sum_i |i>|i> on a dim*dim system."""
    psi = np.zeros(dim * dim, dtype=complex)
    psi[:: dim + 1] = 1.0 / np.sqrt(dim)
    return psi


def maximally_mixed(dim: int) -> np.ndarray:
    return np.eye(dim, dtype=complex) / dim


def normalized(vec: np.ndarray) -> np.ndarray:
    vec = np.asarray(vec, dtype=complex)
    norm = np.linalg.norm(vec)
    if norm == 0:
        raise ValueError("cannot normalize the zero vector")
    return vec / norm


def same_state(a: np.ndarray, b: np.ndarray, tol: float | None = None) -> bool:
    """Whether two unit vectors describe the same physical state.

    Comparison is |<a|b>| = 1 within tolerance; a global phase never counts
    as a difference.
    """
    tol = TOL.spectral if tol is None else tol
    return abs(abs(np.vdot(a, b)) - 1.0) < tol


def random_pure_state(dim: int, seed=None) -> np.ndarray:
    """Haar-random pure state: normalized vector of iid complex Gaussians."""
    if dim < 1:
        raise DimensionError("dim must be at least 1")
    rng = _as_rng(seed)
    z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return z / np.linalg.norm(z)


def random_unitary(dim: int, seed=None) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Ginibre matrix.

    The phases of the R diagonal are absorbed into Q so the distribution is
    uniform over the unitary group.
    """
    if dim < 1:
        raise DimensionError("dim must be at least 1")
    rng = _as_rng(seed)
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_density_matrix(dim: int, seed=None, n_pure: int | None = None) -> np.ndarray:
    """Random full-rank density matrix: uniform mixture of random pure states."""
    rng = _as_rng(seed)
    n_pure = 2 * dim if n_pure is None else n_pure
    rho = np.zeros((dim, dim), dtype=complex)
    for _ in range(n_pure):
        psi = random_pure_state(dim, rng)
        rho += np.outer(psi, psi.conj())
    return rho / n_pure


@dataclass(frozen=True)
class DensityMatrixReport:
    """Outcome of density-matrix validation."""

    hermiticity_defect: float
    trace_defect: float
    min_eigenvalue: float
    ok: bool


def validate_density_matrix(
    rho: np.ndarray,
    structural_tol: float | None = None,
    spectral_tol: float | None = None,
) -> DensityMatrixReport:
    """Check hermiticity, unit trace and positivity of a candidate state."""
    structural_tol = TOL.structural if structural_tol is None else structural_tol
    spectral_tol = TOL.spectral if spectral_tol is None else spectral_tol
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {rho.shape}")
    herm = float(np.abs(rho - rho.conj().T).max())
    trace = float(abs(rho.trace() - 1.0))
    # eigvalsh needs an exactly hermitian input; symmetrize first
    min_eig = float(np.linalg.eigvalsh((rho + rho.conj().T) / 2).min())
    ok = herm < structural_tol and trace < structural_tol and min_eig > -spectral_tol
    return DensityMatrixReport(herm, trace, min_eig, ok)


@dataclass(frozen=True)
class SchmidtDecomposition:
    """Schmidt form of a bipartite pure state.

    ``coefficients`` are the nonzero Schmidt coefficients sorted descending;
    rows of ``basis_a`` / ``basis_b`` are the corresponding local vectors, so
    the original state is ``sum_i coefficients[i] * kron(basis_a[i], basis_b[i])``.
    """

    coefficients: np.ndarray
    basis_a: np.ndarray
    basis_b: np.ndarray

    @property
    def rank(self) -> int:
        return len(self.coefficients)

    def reconstruct(self) -> np.ndarray:
        dim_a = self.basis_a.shape[1]
        dim_b = self.basis_b.shape[1]
        psi = np.zeros(dim_a * dim_b, dtype=complex)
        for lam, va, vb in zip(self.coefficients, self.basis_a, self.basis_b):
            psi += lam * np.kron(va, vb)
        return psi


def schmidt_decompose(psi: np.ndarray, dim_a: int, dim_b: int) -> SchmidtDecomposition:
    """Schmidt decomposition of a pure state on a dim_a x dim_b system.

    The amplitudes are reshaped to a dim_a x dim_b matrix and singular-value
    decomposed; singular values below the Schmidt cutoff are dropped.  The
    A-side vectors are phase-canonicalized (first nonzero entry real
    positive) with the compensating phase pushed to the B side, so
    reconstruction is exact rather than merely up to per-term phases.
    """
    psi = np.asarray(psi, dtype=complex)
    if psi.ndim != 1 or psi.size != dim_a * dim_b:
        raise DimensionError(
            f"state of size {psi.size} does not match dims {dim_a}x{dim_b}"
        )
    mat = psi.reshape(dim_a, dim_b)
    u, s, vh = np.linalg.svd(mat, full_matrices=False)
    keep = s > TOL.schmidt_cutoff
    s, u, vh = s[keep], u[:, keep], vh[keep, :]
    basis_a = u.T.copy()
    basis_b = vh.copy()
    for i, row in enumerate(basis_a):
        j = np.argmax(np.abs(row) > TOL.schmidt_cutoff)
        phase = row[j] / abs(row[j])
        basis_a[i] = row / phase
        basis_b[i] = basis_b[i] * phase
    return SchmidtDecomposition(s, basis_a, basis_b)
