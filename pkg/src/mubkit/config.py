"""Shared numerical tolerance settings."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    """Tolerance budget used across the package.

    Structural checks (orthonormality, trace, hermiticity, unbiasedness) are
    held to ``structural``; quantities that pass through an eigen- or singular
    value decomposition get the looser ``spectral`` budget.  ``violation``
    is the margin that separates a genuine criterion violation from numerical
    noise.
    """

    structural: float = 1e-10
    spectral: float = 1e-9
    schmidt_cutoff: float = 1e-12
    violation: float = 1e-9


TOL = Tolerances()
