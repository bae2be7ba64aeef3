"""Small numerical helpers shared across modules."""

from __future__ import annotations

import numpy as np

GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


def bisect_boundary(predicate, lo: float, hi: float, tol: float = 1e-9,
                    max_iter: int = 200) -> float:
    """Boundary of a monotone predicate: False at ``lo``, True at ``hi``.

    Returns the midpoint of the final bracket, which is within ``tol`` of the
    switching point.
    """
    if predicate(lo):
        raise ValueError(f"predicate already true at lower end {lo}")
    if not predicate(hi):
        raise ValueError(f"predicate still false at upper end {hi}")
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if predicate(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def golden_section_max(f, lo: float, hi: float, n_coarse: int = 7,
                       iters: int = 24) -> tuple[float, float]:
    """Maximize a 1-D function: coarse bracketing then golden-section refine.

    The coarse grid guards against multiple local maxima on the interval;
    the returned value is the best point ever evaluated, so the result never
    regresses below the grid maximum.
    """
    xs = np.linspace(lo, hi, n_coarse)
    vals = [f(x) for x in xs]
    k = int(np.argmax(vals))
    best_x, best_v = float(xs[k]), vals[k]
    a = float(xs[max(k - 1, 0)])
    b = float(xs[min(k + 1, n_coarse - 1)])
    x1 = b - GOLDEN * (b - a)
    x2 = a + GOLDEN * (b - a)
    f1, f2 = f(x1), f(x2)
    for _ in range(iters):
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + GOLDEN * (b - a)
            f2 = f(x2)
            if f2 > best_v:
                best_x, best_v = x2, f2
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - GOLDEN * (b - a)
            f1 = f(x1)
            if f1 > best_v:
                best_x, best_v = x1, f1
    return best_x, best_v
