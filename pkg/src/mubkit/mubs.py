"""Construction, conjugation and verification of mutually unbiased bases.

A basis is stored as a (d, d) complex array whose *rows* are the basis
vectors.  Two bases are mutually unbiased when every cross overlap satisfies
|<i|j>|^2 = 1/d; a complete set in dimension d has d + 1 bases.

Supported analytic constructions: d = 2 (the Pauli eigenbases), odd primes
and shipped odd prime powers (finite-field quadratic phases), and d = 4 (an
explicit two-qubit stabilizer table).  Other dimensions can be covered by
``fourier_pair`` or by importing a set from file, which is verified on load.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import TOL
from .galois import (
    IRREDUCIBLE_POLYNOMIALS,
    FieldTable,
    UnsupportedFieldError,
    gf_build,
    is_prime,
)
from .qmath import DimensionError


class UnsupportedDimensionError(ValueError):
    """No analytic complete-set construction for this dimension."""


@dataclass(frozen=True, eq=False)
class Basis:
    """Orthonormal basis; ``vectors[i]`` holds the amplitudes of vector i."""

    vectors: np.ndarray

    def __post_init__(self):
        vecs = np.array(self.vectors, dtype=complex)
        if vecs.ndim != 2 or vecs.shape[0] != vecs.shape[1]:
            raise DimensionError(f"basis must be a square array, got {vecs.shape}")
        vecs.setflags(write=False)  # shared freely across threads
        object.__setattr__(self, "vectors", vecs)

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]

    def conjugate(self) -> "Basis":
        return Basis(self.vectors.conj())

    def __iter__(self):
        return iter(self.vectors)


@dataclass(frozen=True, eq=False)
class MubSet:
    """A collection of pairwise mutually unbiased bases of one dimension."""

    bases: tuple[Basis, ...]

    def __post_init__(self):
        bases = tuple(self.bases)
        if not bases:
            raise DimensionError("a MUB set needs at least one basis")
        dims = {b.dim for b in bases}
        if len(dims) != 1:
            raise DimensionError(f"bases have mixed dimensions {sorted(dims)}")
        if len(bases) > bases[0].dim + 1:
            raise DimensionError(
                f"{len(bases)} bases exceed the d+1 = {bases[0].dim + 1} maximum"
            )
        object.__setattr__(self, "bases", bases)

    @property
    def dim(self) -> int:
        return self.bases[0].dim

    @property
    def count(self) -> int:
        return len(self.bases)

    @property
    def is_complete(self) -> bool:
        return self.count == self.dim + 1

    def conjugate(self) -> "MubSet":
        return MubSet(tuple(b.conjugate() for b in self.bases))

    def __len__(self) -> int:
        return len(self.bases)

    def __getitem__(self, k: int) -> Basis:
        return self.bases[k]

    def __iter__(self):
        return iter(self.bases)


@dataclass(frozen=True)
class MubVerificationReport:
    """Worst-case defects found while checking a candidate MUB set."""

    ok: bool
    worst_orthonormality_defect: float
    worst_unbiasedness_defect: float
    failing_pair: tuple[int, int] | None


def canonical_phase(vectors: np.ndarray) -> np.ndarray:
    """Rotate each row so its first nonzero amplitude is real positive."""
    out = np.array(vectors, dtype=complex)
    for i, row in enumerate(out):
        nz = np.flatnonzero(np.abs(row) > 1e-12)
        if nz.size:
            out[i] = row / (row[nz[0]] / abs(row[nz[0]]))
    return out


def _pauli_trio() -> list[np.ndarray]:
    s = 1.0 / np.sqrt(2.0)
    b1 = np.eye(2, dtype=complex)
    b2 = np.array([[s, s], [s, -s]], dtype=complex)
    b3 = np.array([[s, 1j * s], [s, -1j * s]], dtype=complex)
    return [b1, b2, b3]


# Complete five-basis set for two qubits (common eigenbases of the five
# commuting Pauli triples); every entry is in {1, -1, i, -i}/2.
def _two_qubit_table() -> list[np.ndarray]:
    i = 1j
    b0 = np.eye(4, dtype=complex)
    b1 = np.array(
        [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, -1, 1], [1, -1, 1, -1]],
        dtype=complex,
    )
    b2 = np.array(
        [[1, -1, -i, -i], [1, -1, i, i], [1, 1, i, -i], [1, 1, -i, i]],
        dtype=complex,
    )
    b3 = np.array(
        [[1, -i, -i, -1], [1, -i, i, 1], [1, i, i, -1], [1, i, -i, 1]],
        dtype=complex,
    )
    b4 = np.array(
        [[1, -i, -1, -i], [1, -i, 1, i], [1, i, 1, -i], [1, i, -1, i]],
        dtype=complex,
    )
    return [b0, b1 / 2, b2 / 2, b3 / 2, b4 / 2]


def _field_mubs(field: FieldTable) -> list[np.ndarray]:
    """Quadratic-phase complete set over GF(q), q an odd prime power.

    Basis a has vectors indexed by b with components
    (1/sqrt(q)) * omega_p^{tr(a j^2 + b j)} at position j.
    """
    q, p = field.size, field.p
    square = field.mul[np.arange(q), np.arange(q)]
    bases = [np.eye(q, dtype=complex)]
    for a in range(q):
        shift = field.mul[a, square]  # a * j^2 for each j
        exponents = field.trace[field.add[shift[None, :], field.mul]]
        bases.append(np.exp(2j * np.pi * exponents / p) / np.sqrt(q))
    return bases


def _prime_power(d: int) -> tuple[int, int] | None:
    for p in range(2, d + 1):
        if not is_prime(p):
            continue
        n, q = 1, p
        while q < d:
            q *= p
            n += 1
        if q == d:
            return p, n
    return None


def supported_dimensions_note() -> str:
    powers = sorted(p**n for (p, n) in IRREDUCIBLE_POLYNOMIALS)
    return (
        "complete sets are available for d = 2, d = 4, odd primes, "
        f"and odd prime powers {powers}; for other d use fourier_pair "
        "or import a verified set from file"
    )


def construct_mub_set(d: int) -> MubSet:
    """Build a complete set of d + 1 mutually unbiased bases.

    d = 2 returns the three Pauli eigenbases, d = 4 the shipped two-qubit
    stabilizer table (re-verified at load), and odd prime powers the
    finite-field quadratic-phase construction.  Raises
    UnsupportedDimensionError otherwise (for example d = 6, 8, 12).
    """
    if d == 2:
        raw = _pauli_trio()
    elif d == 4:
        raw = _two_qubit_table()
        report = verify_mub_set([Basis(b) for b in raw])
        if not report.ok:
            raise AssertionError(f"shipped d=4 table failed verification: {report}")
    else:
        pn = _prime_power(d) if d >= 2 else None
        if pn is None or pn[0] == 2:
            raise UnsupportedDimensionError(
                f"d = {d} has no analytic complete-set construction here; "
                + supported_dimensions_note()
            )
        p, n = pn
        try:
            field = gf_build(p, n)
        except UnsupportedFieldError as exc:
            raise UnsupportedDimensionError(
                f"d = {d}: {exc}; " + supported_dimensions_note()
            ) from exc
        raw = _field_mubs(field)
    return MubSet(tuple(Basis(canonical_phase(b)) for b in raw))


def fourier_pair(d: int) -> MubSet:
    """The computational basis and its discrete-Fourier partner.

    Works in every dimension d >= 2, prime power or not; the pair is always
    mutually unbiased since all Fourier amplitudes have modulus 1/sqrt(d).
    """
    if d < 2:
        raise UnsupportedDimensionError("fourier_pair needs d >= 2")
    k = np.arange(d)
    fourier = np.exp(2j * np.pi * np.outer(k, k) / d) / np.sqrt(d)
    return MubSet((Basis(np.eye(d, dtype=complex)), Basis(canonical_phase(fourier))))


def conjugate_mub_set(mub: MubSet) -> MubSet:
    """Entrywise complex conjugate of every basis vector."""
    return mub.conjugate()


def verify_mub_set(mub, tol: float | None = None) -> MubVerificationReport:
    """Check orthonormality of each basis and unbiasedness of each pair.

    Accepts a MubSet or any iterable of Basis objects.  Reports the worst
    defects over the whole set instead of failing fast, which is the useful
    behaviour when diagnosing an imported file.
    """
    tol = TOL.structural if tol is None else tol
    bases = list(mub.bases) if isinstance(mub, MubSet) else [
        b if isinstance(b, Basis) else Basis(np.asarray(b)) for b in mub
    ]
    if not bases:
        raise DimensionError("nothing to verify")
    d = bases[0].dim
    if any(b.dim != d for b in bases):
        raise DimensionError("bases have mixed dimensions")

    worst_orth = 0.0
    worst_unbias = 0.0
    failing: tuple[int, int] | None = None
    eye = np.eye(d)
    for k, basis in enumerate(bases):
        defect = float(np.abs(basis.vectors.conj() @ basis.vectors.T - eye).max())
        if defect > worst_orth:
            worst_orth = defect
            if defect > tol and failing is None:
                failing = (k, k)
    for k in range(len(bases)):
        for l in range(k + 1, len(bases)):
            overlap = np.abs(bases[k].vectors.conj() @ bases[l].vectors.T) ** 2
            defect = float(np.abs(overlap - 1.0 / d).max())
            if defect > worst_unbias:
                worst_unbias = defect
                if defect > tol and failing is None:
                    failing = (k, l)
    ok = worst_orth <= tol and worst_unbias <= tol
    return MubVerificationReport(ok, worst_orth, worst_unbias, None if ok else failing)


def quartic_sum(psi: np.ndarray, mub: MubSet) -> float:
    """Sum of |<i_k|psi>|^4 over all vectors of all bases in the set.

    For a normalized state and m mutually unbiased bases the value is at
    most 1 + (m - 1)/d, with equality when psi is a basis vector of one of
    the bases.
    """
    psi = np.asarray(psi, dtype=complex)
    if psi.ndim != 1 or psi.size != mub.dim:
        raise DimensionError(f"state size {psi.size} does not match d = {mub.dim}")
    total = 0.0
    for basis in mub:
        amps = basis.vectors.conj() @ psi
        total += float((np.abs(amps) ** 4).sum())
    return total
