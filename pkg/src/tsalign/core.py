"""Banded dynamic-programming alignment engine and plain DTW.

Series are 1-D float64 arrays; an alignment (warping path) is an ordered
sequence of 1-based index pairs satisfying the boundary, monotonicity, and
step-size constraints.  The engine fills a Sakoe-Chiba band of per-cell costs
and backtracks one optimal path, breaking ties deterministically: diagonal
first, then left (b-1), then up (a-1).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np
from numba import njit

from .errors import ConfigError

__all__ = [
    "AlignmentPath",
    "BandConfig",
    "CellCost",
    "Alignment",
    "DpResult",
    "as_series",
    "pointwise_cost",
    "dp_align",
    "dtw",
    "validate_path",
]


def as_series(values) -> np.ndarray:
    """Validate and convert a time series to a contiguous float64 array.

    Requires a 1-D sequence of at least one finite value.
    """
    arr = np.ascontiguousarray(values, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError(f"time series must be 1-D, got shape {arr.shape}")
    if arr.size < 1:
        raise ValueError("time series must contain at least one value")
    if not np.all(np.isfinite(arr)):
        raise ValueError("time series values must be finite")
    return arr


def pointwise_cost(x: float, y: float) -> float:
    """Squared difference between two amplitudes."""
    d = x - y
    return d * d


@dataclass(frozen=True)
class BandConfig:
    """Sakoe-Chiba band of half-width ``w_q`` around the main diagonal.

    The half-width actually applied is ``max(w_q, |n - m|)`` so the corner
    cell (n, m) stays reachable for series of unequal length.
    """

    w_q: int

    def __post_init__(self) -> None:
        if int(self.w_q) != self.w_q or self.w_q < 0:
            raise ConfigError(f"band half-width must be a non-negative integer, got {self.w_q}")
        object.__setattr__(self, "w_q", int(self.w_q))

    @property
    def w_b(self) -> int:
        """Band width 1 + 2*w_q."""
        return 1 + 2 * self.w_q

    def effective_half_width(self, n: int, m: int) -> int:
        # Widths beyond max(n-1, m-1) admit every cell already; capping them
        # keeps band storage at O(max(n, m)) per row.
        return min(max(self.w_q, abs(n - m)), max(n - 1, m - 1))

    @classmethod
    def full(cls) -> "BandConfig":
        """A band wide enough to leave the alignment unconstrained."""
        return cls(w_q=2**31 - 1)


@dataclass(frozen=True, eq=False)
class AlignmentPath:
    """Ordered sequence of 1-based matched index pairs (a_k, b_k)."""

    pairs: np.ndarray

    def __post_init__(self) -> None:
        arr = np.ascontiguousarray(self.pairs, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[1] != 2 or arr.shape[0] < 1:
            raise ValueError(f"path pairs must have shape (L, 2) with L >= 1, got {arr.shape}")
        object.__setattr__(self, "pairs", arr)

    @property
    def a(self) -> np.ndarray:
        return self.pairs[:, 0]

    @property
    def b(self) -> np.ndarray:
        return self.pairs[:, 1]

    def __len__(self) -> int:
        return self.pairs.shape[0]

    def __iter__(self):
        return iter(map(tuple, self.pairs))


def validate_path(path, n: int, m: int) -> bool:
    """Check the boundary, monotonicity, and step-size constraints."""
    pairs = path.pairs if isinstance(path, AlignmentPath) else np.asarray(path, dtype=np.int64)
    if pairs.ndim != 2 or pairs.shape[1] != 2 or pairs.shape[0] < 1:
        return False
    if tuple(pairs[0]) != (1, 1) or tuple(pairs[-1]) != (n, m):
        return False
    steps = np.diff(pairs, axis=0)
    if steps.size == 0:
        return n == 1 and m == 1
    if np.any(steps < 0) or np.any(steps > 1):
        return False
    # at least one coordinate must advance
    return bool(np.all(steps.sum(axis=1) >= 1))


class CellCost:
    """In-band table of per-cell alignment costs.

    Stores one row per s-index with columns covering the band diagonals
    ``b - a in [-w, w]``; cells outside the band read as +inf.
    """

    __slots__ = ("n", "m", "half_width", "band")

    def __init__(self, n: int, m: int, half_width: int, band: np.ndarray):
        self.n = int(n)
        self.m = int(m)
        self.half_width = int(half_width)
        if band.shape != (self.n, 2 * self.half_width + 1):
            raise ValueError(f"band array shape {band.shape} does not match (n, 2w+1)")
        self.band = band

    def value(self, a: int, b: int) -> float:
        """Cost at 1-based cell (a, b); +inf outside the band."""
        if not (1 <= a <= self.n and 1 <= b <= self.m):
            raise IndexError(f"cell ({a}, {b}) outside table of shape ({self.n}, {self.m})")
        k = (b - a) + self.half_width
        if k < 0 or k > 2 * self.half_width:
            return float("inf")
        return float(self.band[a - 1, k])

    def in_band(self, a: int, b: int) -> bool:
        return abs(b - a) <= self.half_width and 1 <= a <= self.n and 1 <= b <= self.m

    @classmethod
    def from_matrix(cls, matrix, band: BandConfig) -> "CellCost":
        """Build a cost table from a dense (n, m) matrix."""
        mat = np.asarray(matrix, dtype=np.float64)
        if mat.ndim != 2:
            raise ValueError("cost matrix must be 2-D")
        n, m = mat.shape
        w = band.effective_half_width(n, m)
        out = np.full((n, 2 * w + 1), np.inf)
        for i in range(n):
            lo = max(0, i - w)
            hi = min(m - 1, i + w)
            out[i, lo - i + w : hi - i + w + 1] = mat[i, lo : hi + 1]
        return cls(n, m, w, out)

    @classmethod
    def from_function(cls, fn: Callable[[int, int], float], n: int, m: int, band: BandConfig) -> "CellCost":
        """Build a cost table by evaluating ``fn(a, b)`` on 1-based in-band cells."""
        w = band.effective_half_width(n, m)
        out = np.full((n, 2 * w + 1), np.inf)
        for i in range(n):
            lo = max(0, i - w)
            hi = min(m - 1, i + w)
            for j in range(lo, hi + 1):
                out[i, j - i + w] = fn(i + 1, j + 1)
        return cls(n, m, w, out)


class DpResult(NamedTuple):
    path: AlignmentPath
    total: float


class Alignment(NamedTuple):
    path: AlignmentPath
    measure: float


@njit(cache=True, nogil=True)
def _fill_band_pointwise(s, t, w):
    n = s.size
    m = t.size
    band = np.full((n, 2 * w + 1), np.inf)
    for i in range(n):
        lo = max(0, i - w)
        hi = min(m - 1, i + w)
        for j in range(lo, hi + 1):
            d = s[i] - t[j]
            band[i, j - i + w] = d * d
    return band


@njit(cache=True, nogil=True)
def _dp_band(band, n, m, w):
    # Move codes: 0 start, 1 diagonal, 2 left (b-1), 3 up (a-1).
    width = 2 * w + 1
    acc = np.full((n, width), np.inf)
    steps = np.full((n, width), -1, dtype=np.int8)
    for i in range(n):
        lo = max(0, i - w)
        hi = min(m - 1, i + w)
        for j in range(lo, hi + 1):
            k = j - i + w
            if i == 0 and j == 0:
                acc[i, k] = band[i, k]
                steps[i, k] = 0
                continue
            best = np.inf
            move = -1
            if i > 0 and j > 0:
                v = acc[i - 1, k]
                if v < best:
                    best = v
                    move = 1
            if j > 0 and k - 1 >= 0:
                v = acc[i, k - 1]
                if v < best:
                    best = v
                    move = 2
            if i > 0 and k + 1 < width:
                v = acc[i - 1, k + 1]
                if v < best:
                    best = v
                    move = 3
            acc[i, k] = band[i, k] + best
            steps[i, k] = move
    return acc[n - 1, (m - 1) - (n - 1) + w], steps


@njit(cache=True, nogil=True)
def _backtrack(steps, n, m, w):
    out = np.empty((n + m - 1, 2), dtype=np.int64)
    i = n - 1
    j = m - 1
    k = n + m - 1
    while True:
        k -= 1
        out[k, 0] = i
        out[k, 1] = j
        move = steps[i, j - i + w]
        if move <= 0:
            break
        if move == 1:
            i -= 1
            j -= 1
        elif move == 2:
            j -= 1
        else:
            i -= 1
    return out[k:]


def dp_align(cost: CellCost) -> DpResult:
    """Minimize the summed cell cost over all valid paths inside the band.

    Returns one optimal path recovered by backtracking, with diagonal-first
    tie-breaking, and the optimal total.
    """
    total, steps = _dp_band(cost.band, cost.n, cost.m, cost.half_width)
    if not np.isfinite(total):
        raise RuntimeError("no finite-cost path through the band; cost table is inconsistent")
    pairs = _backtrack(steps, cost.n, cost.m, cost.half_width)
    return DpResult(AlignmentPath(pairs + 1), float(total))


def dtw(s, t, band: BandConfig) -> Alignment:
    """Dynamic time warping under a Sakoe-Chiba band.

    Returns an optimal path and the summed squared-difference measure.
    """
    s = as_series(s)
    t = as_series(t)
    w = band.effective_half_width(s.size, t.size)
    cost = CellCost(s.size, t.size, w, _fill_band_pointwise(s, t, w))
    path, total = dp_align(cost)
    return Alignment(path, total)
