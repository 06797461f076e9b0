"""Independent oracles for the test suite.

Deliberately avoids the library's DP recursion, rolling updates, and
closed-form fits: paths are enumerated exhaustively, fits solved with
numpy.linalg, and 2-D objectives minimized by grid refinement, so agreement
with the implementation is meaningful evidence of correctness.
"""

from __future__ import annotations

import functools

import numpy as np


@functools.lru_cache(maxsize=None)
def _path_catalog(n: int, m: int) -> tuple[np.ndarray, np.ndarray]:
    """Flattened cell indices of every valid path through an (n, m) grid,
    concatenated, with the start offset of each path."""
    paths: list[list[int]] = []

    def extend(i: int, j: int, prefix: list[int]) -> None:
        prefix = prefix + [i * m + j]
        if i == n - 1 and j == m - 1:
            paths.append(prefix)
            return
        if i + 1 < n and j + 1 < m:
            extend(i + 1, j + 1, prefix)
        if j + 1 < m:
            extend(i, j + 1, prefix)
        if i + 1 < n:
            extend(i + 1, j, prefix)

    extend(0, 0, [])
    offsets = np.cumsum([0] + [len(p) for p in paths[:-1]])
    return np.concatenate([np.asarray(p) for p in paths]), np.asarray(offsets)


def min_path_cost(cost_matrix, half_width: int | None = None) -> float:
    """Exhaustive minimum of summed cell costs over all valid paths.

    With a half-width, cells beyond the band are made unreachable so the
    minimum ranges over in-band paths only.
    """
    cost = np.array(cost_matrix, dtype=np.float64)
    n, m = cost.shape
    if half_width is not None:
        i, j = np.indices((n, m))
        cost[np.abs(i - j) > half_width] = np.inf
    cat, offsets = _path_catalog(n, m)
    totals = np.add.reduceat(cost.ravel()[cat], offsets)
    return float(totals.min())


def lsq_affine(sa, tb) -> tuple[float, float]:
    """Least-squares (c, e) for sa ~ c*tb + e via numpy.linalg."""
    tb = np.asarray(tb, dtype=np.float64)
    design = np.column_stack([tb, np.ones_like(tb)])
    coef, *_ = np.linalg.lstsq(design, np.asarray(sa, dtype=np.float64), rcond=None)
    return float(coef[0]), float(coef[1])


def window_lsq_residual(sw, tw) -> float:
    """Minimal mean squared residual of sw against any c*tw + e."""
    sw = np.asarray(sw, dtype=np.float64)
    tw = np.asarray(tw, dtype=np.float64)
    design = np.column_stack([tw, np.ones_like(tw)])
    coef, *_ = np.linalg.lstsq(design, sw, rcond=None)
    r = sw - design @ coef
    return float(r @ r) / sw.size


def windowed_objective(s, t, pairs, w_h: int):
    """Direct evaluator of the window-mean residual objective as a function
    of (c, e), vectorized over the path with zero-padded windows."""
    s = np.asarray(s, dtype=np.float64)
    t = np.asarray(t, dtype=np.float64)
    n, m = s.size, t.size
    width = 2 * w_h + 1
    k = len(pairs)
    S = np.zeros((k, width))
    T = np.zeros((k, width))
    M = np.zeros((k, width))
    for row, (a, b) in enumerate(pairs):
        lo = max(-w_h, 1 - a, 1 - b)
        hi = min(w_h, n - a, m - b)
        S[row, lo + w_h : hi + w_h + 1] = s[a - 1 + lo : a - 1 + hi + 1]
        T[row, lo + w_h : hi + w_h + 1] = t[b - 1 + lo : b - 1 + hi + 1]
        M[row, lo + w_h : hi + w_h + 1] = 1.0
    counts = M.sum(axis=1)

    def objective(c: float, e: float) -> float:
        r = (S - (c * T + e)) * M
        return float(((r * r).sum(axis=1) / counts).sum())

    return objective


def grid_refine_min(f, c_range=(-10.0, 10.0), e_range=(-10.0, 10.0),
                    rounds: int = 14, points: int = 21) -> tuple[float, float]:
    """Minimize a smooth convex 2-D function by iterative grid refinement."""
    c_lo, c_hi = c_range
    e_lo, e_hi = e_range
    c_star = e_star = 0.0
    for _ in range(rounds):
        cs = np.linspace(c_lo, c_hi, points)
        es = np.linspace(e_lo, e_hi, points)
        vals = np.array([[f(c, e) for e in es] for c in cs])
        ic, ie = np.unravel_index(np.argmin(vals), vals.shape)
        c_star, e_star = float(cs[ic]), float(es[ie])
        c_step = (c_hi - c_lo) / (points - 1)
        e_step = (e_hi - e_lo) / (points - 1)
        c_lo, c_hi = c_star - 2 * c_step, c_star + 2 * c_step
        e_lo, e_hi = e_star - 2 * e_step, e_star + 2 * e_step
    return c_star, e_star
