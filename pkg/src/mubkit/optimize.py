"""Maximization of the predictability criterion over local unitaries.

The criterion value of (U_A x U_B) rho (U_A x U_B)^dag is maximized by
derivative-free cyclic coordinate descent over a Givens-factorized
parameterization of the two local unitaries, optionally with outcome
relabeling inside the objective.  Any value found is a certified lower
bound on the true maximum, and any violation found is genuine; the search
never certifies the absence of entanglement.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

import numpy as np
from scipy.optimize import linear_sum_assignment

from .config import TOL
from .mubs import MubSet
from .numerics import golden_section_max
from .qmath import DimensionError


def n_rotation_params(dim: int) -> int:
    return dim * (dim - 1) // 2


@dataclass(frozen=True, eq=False)
class UnitaryParams:
    """Angles of a Givens-factorized local unitary, global-phase free.

    One rotation angle in [0, pi/2] and one relative phase in [0, 2 pi) per
    coordinate pair (m, n), m < n, composed in lexicographic order.
    """

    dim: int
    thetas: np.ndarray
    phis: np.ndarray

    def __post_init__(self):
        expected = n_rotation_params(self.dim)
        thetas = np.asarray(self.thetas, dtype=float)
        phis = np.asarray(self.phis, dtype=float)
        if thetas.shape != (expected,) or phis.shape != (expected,):
            raise DimensionError(
                f"dimension {self.dim} needs {expected} rotation angles and "
                f"{expected} phases, got {thetas.shape} and {phis.shape}"
            )
        object.__setattr__(self, "thetas", thetas)
        object.__setattr__(self, "phis", phis)

    @classmethod
    def identity(cls, dim: int) -> "UnitaryParams":
        n = n_rotation_params(dim)
        return cls(dim, np.zeros(n), np.zeros(n))

    @classmethod
    def random(cls, dim: int, rng: np.random.Generator) -> "UnitaryParams":
        n = n_rotation_params(dim)
        return cls(dim, rng.uniform(0, np.pi / 2, n), rng.uniform(0, 2 * np.pi, n))


def _compose_unitary(dim: int, thetas: np.ndarray, phis: np.ndarray) -> np.ndarray:
    # right-multiplying an embedded two-level rotation touches two columns
    u = np.eye(dim, dtype=complex)
    idx = 0
    for m in range(dim - 1):
        for n in range(m + 1, dim):
            c, s = np.cos(thetas[idx]), np.sin(thetas[idx])
            phase = np.exp(1j * phis[idx])
            idx += 1
            col_m = u[:, m].copy()
            col_n = u[:, n]
            u[:, m] = c * col_m + s * phase.conj() * col_n
            u[:, n] = -s * phase * col_m + c * col_n
    return u


def parameterize_unitary(params: UnitaryParams) -> np.ndarray:
    """Ordered product of embedded two-level rotations with relative phases.

    The (m, n) factor acts as [[cos t, -e^{i phi} sin t],
    [e^{-i phi} sin t, cos t]] on coordinates m and n, so all parameters
    zero give the identity and a single pi/4 rotation at d = 2 maps |0> to
    (|0> + |1>)/sqrt(2).
    """
    return _compose_unitary(params.dim, params.thetas, params.phis)


def _make_evaluator(rho: np.ndarray, mub: MubSet, relabel: bool):
    """Criterion value of the rotated state as a function of (U_A*, U_B*).

    All bases are stacked so each evaluation is a handful of array
    operations; the relabeling maximum is taken by brute force over the d!
    outcome permutations for small d and by an assignment solve otherwise.
    """
    d, m = mub.dim, mub.count
    base_a = np.stack([basis.vectors for basis in mub])
    base_b = np.stack([basis.vectors.conj() for basis in mub])
    small = relabel and d <= 5
    if small:
        perm_idx = np.array(list(permutations(range(d))), dtype=np.intp)
        row_idx = np.arange(d)

    def evaluate(u_a_conj: np.ndarray, u_b_conj: np.ndarray) -> float:
        kets_a = base_a @ u_a_conj
        kets_b = base_b @ u_b_conj
        if not relabel:
            prod = np.einsum("kix,kiy->kixy", kets_a, kets_b).reshape(m * d, -1)
            return float(
                np.einsum("px,xy,py->p", prod.conj(), rho, prod).real.sum()
            )
        prod = np.einsum("kix,kjy->kijxy", kets_a, kets_b).reshape(m * d * d, -1)
        probs = np.einsum(
            "px,xy,py->p", prod.conj(), rho, prod
        ).real.reshape(m, d, d)
        if small:
            diag_sums = probs[:, row_idx, perm_idx].sum(axis=-1)
            return float(diag_sums.max(axis=-1).sum())
        total = 0.0
        for p in probs:
            rows, cols = linear_sum_assignment(-p)
            total += float(p[rows, cols].sum())
        return total

    return evaluate


def objective(rho: np.ndarray, mub: MubSet, params_a: UnitaryParams,
              params_b: UnitaryParams, relabel: bool = True) -> float:
    """Criterion value of the locally rotated state.

    Implemented by rotating the measurement bases instead of the state: the
    value equals the criterion of (U_A x U_B) rho (U_A x U_B)^dag evaluated
    with the set on A and its conjugate on B.
    """
    evaluate = _make_evaluator(rho, mub, relabel)
    return evaluate(parameterize_unitary(params_a).conj(),
                    parameterize_unitary(params_b).conj())


@dataclass(frozen=True)
class OptimizerConfig:
    restarts: int = 8
    max_sweeps: int = 200
    min_improvement: float = 1e-8
    seed: int = 0
    relabel: bool = True

    def __post_init__(self):
        if self.restarts < 1 or self.max_sweeps < 1 or self.min_improvement <= 0:
            raise ValueError("restarts, max_sweeps and min_improvement must be positive")


@dataclass(frozen=True)
class OptimizationResult:
    """Best value found with its parameters; a lower bound on the maximum."""

    value: float
    params_a: UnitaryParams
    params_b: UnitaryParams
    bound: float
    margin: float
    violated: bool
    converged: bool
    sweeps: int
    history: tuple[float, ...] = field(repr=False)


# line-search ranges per parameter block: (A thetas, A phis, B thetas, B phis)
_BLOCK_RANGES = ((0.0, np.pi / 2), (0.0, 2 * np.pi))


def maximize_criterion(rho: np.ndarray, mub: MubSet,
                       config: OptimizerConfig | None = None) -> OptimizationResult:
    """Coordinate-descent search for the best locally rotated criterion value.

    Each restart sweeps cyclically over all angles and phases of both
    parties, maximizing one coordinate at a time by bracketed golden-section
    line search; the first restart starts from the identity, the rest from
    seeded random parameters.  Stops a restart when a full sweep improves
    the value by less than the configured threshold.
    """
    config = OptimizerConfig() if config is None else config
    d = mub.dim
    if rho.shape != (d * d, d * d):
        raise DimensionError(
            f"state of shape {rho.shape} does not match local dimension {d}"
        )
    rng = np.random.default_rng(config.seed)
    n = n_rotation_params(d)
    bound = 1.0 + (mub.count - 1) / d
    evaluator = _make_evaluator(rho, mub, config.relabel)

    best_value = -np.inf
    best_blocks: list[np.ndarray] | None = None
    best_history: list[float] = []
    best_converged = False
    best_sweeps = 0

    for restart in range(config.restarts):
        if restart == 0:
            blocks = [np.zeros(n), np.zeros(n), np.zeros(n), np.zeros(n)]
        else:
            blocks = [
                rng.uniform(0, np.pi / 2, n), rng.uniform(0, 2 * np.pi, n),
                rng.uniform(0, np.pi / 2, n), rng.uniform(0, 2 * np.pi, n),
            ]

        def evaluate() -> float:
            return evaluator(_compose_unitary(d, blocks[0], blocks[1]).conj(),
                             _compose_unitary(d, blocks[2], blocks[3]).conj())

        current = evaluate()
        history = [current]
        converged = False
        sweeps = 0
        for _ in range(config.max_sweeps):
            sweeps += 1
            before = current
            for block_idx in range(4):
                lo, hi = _BLOCK_RANGES[block_idx % 2]
                for coord in range(n):
                    saved = blocks[block_idx][coord]

                    def line(t: float) -> float:
                        blocks[block_idx][coord] = t
                        return evaluate()

                    t_best, v_best = golden_section_max(line, lo, hi)
                    if v_best > current:
                        blocks[block_idx][coord] = t_best
                        current = v_best
                    else:
                        blocks[block_idx][coord] = saved
            history.append(current)
            if current - before < config.min_improvement:
                converged = True
                break
        if current > best_value:
            best_value = current
            best_blocks = [b.copy() for b in blocks]
            best_history = history
            best_converged = converged
            best_sweeps = sweeps

    assert best_blocks is not None
    margin = best_value - bound
    return OptimizationResult(
        value=best_value,
        params_a=UnitaryParams(d, best_blocks[0], best_blocks[1]),
        params_b=UnitaryParams(d, best_blocks[2], best_blocks[3]),
        bound=bound,
        margin=margin,
        violated=margin > TOL.violation,
        converged=best_converged,
        sweeps=best_sweeps,
        history=tuple(best_history),
    )
