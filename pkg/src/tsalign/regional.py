"""Regional DTW: alignment on window-averaged pointwise costs.

The regional cost at cell (a, b) is the mean squared difference over offsets
``-w_h..w_h`` kept inside both series; the window truncates at the
boundaries, so the offset count varies per cell.  Cost tables are filled
along band diagonals with an O(1) rolling update (subtract the departing
term, add the arriving one), re-anchored by a direct recomputation every 256
cells to bound floating-point drift.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np
from numba import njit

from .core import Alignment, BandConfig, CellCost, as_series, dp_align
from .errors import ConfigError

__all__ = ["RegionalCost", "regional_cost_direct", "regional_cost_table", "rdtw"]

_REANCHOR_EVERY = 256


class RegionalCost(NamedTuple):
    cost: float
    count: int


def _check_region_half_width(w_h) -> int:
    if int(w_h) != w_h or w_h < 0:
        raise ConfigError(f"region half-width must be a non-negative integer, got {w_h}")
    return int(w_h)


def regional_cost_direct(s, t, a: int, b: int, w_h: int) -> RegionalCost:
    """Window-mean squared difference at 1-based cell (a, b), with the count
    of in-range offsets actually averaged."""
    s = as_series(s)
    t = as_series(t)
    w_h = _check_region_half_width(w_h)
    n, m = s.size, t.size
    if not (1 <= a <= n and 1 <= b <= m):
        raise IndexError(f"cell ({a}, {b}) outside ({n}, {m})")
    lo = max(-w_h, 1 - a, 1 - b)
    hi = min(w_h, n - a, m - b)
    sw = s[a - 1 + lo : a - 1 + hi + 1]
    tw = t[b - 1 + lo : b - 1 + hi + 1]
    diff = sw - tw
    count = hi - lo + 1
    return RegionalCost(float(diff.dot(diff)) / count, count)


@njit(cache=True, nogil=True)
def _fill_band_regional(s, t, w, w_h):
    n = s.size
    m = t.size
    band = np.full((n, 2 * w + 1), np.inf)
    for diag in range(-w, w + 1):
        i = max(0, -diag)
        j = i + diag
        if j >= m or i >= n:
            continue
        run_sum = 0.0
        run_cnt = 0
        step = 0
        while i < n and j < m:
            if step % _REANCHOR_EVERY == 0:
                run_sum = 0.0
                run_cnt = 0
                lo = max(-w_h, -i, -j)
                hi = min(w_h, n - 1 - i, m - 1 - j)
                for off in range(lo, hi + 1):
                    d = s[i + off] - t[j + off]
                    run_sum += d * d
                    run_cnt += 1
            else:
                if i - 1 - w_h >= 0 and j - 1 - w_h >= 0:
                    d = s[i - 1 - w_h] - t[j - 1 - w_h]
                    run_sum -= d * d
                    run_cnt -= 1
                if i + w_h <= n - 1 and j + w_h <= m - 1:
                    d = s[i + w_h] - t[j + w_h]
                    run_sum += d * d
                    run_cnt += 1
            v = run_sum / run_cnt
            band[i, j - i + w] = v if v > 0.0 else 0.0
            step += 1
            i += 1
            j += 1
    return band


def regional_cost_table(s, t, band: BandConfig, w_h: int) -> CellCost:
    """In-band regional costs, equal to :func:`regional_cost_direct` per cell."""
    s = as_series(s)
    t = as_series(t)
    w_h = _check_region_half_width(w_h)
    w = band.effective_half_width(s.size, t.size)
    return CellCost(s.size, t.size, w, _fill_band_regional(s, t, w, w_h))


def rdtw(s, t, band: BandConfig, w_h: int) -> Alignment:
    """Regional DTW; with ``w_h = 0`` it coincides with plain DTW."""
    cost = regional_cost_table(s, t, band, w_h)
    path, total = dp_align(cost)
    return Alignment(path, total)
