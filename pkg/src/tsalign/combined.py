"""Combined affine and regional alignment.

GARDTW fits one global (c, e) against window-averaged costs by hard EM;
LARDTW fits a separate (c, e) for every matched window in closed form, so
its per-cell cost is the best achievable windowed residual.  Both reuse the
banded DP engine, and LARDTW maintains its window sums with the same rolling
diagonal updates as the regional cost table.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from ._fit import _DEGENERATE_RTOL, _affine_from_stats, _em_align, _path_window_residual, _path_window_stats
from .affine import AffineParams, EmAlignment, EmConfig, ScalingBounds, _path_columns
from .core import Alignment, AlignmentPath, BandConfig, CellCost, as_series, dp_align, validate_path
from .errors import ConfigError
from .regional import _REANCHOR_EVERY, _check_region_half_width

__all__ = [
    "WindowStats",
    "local_affine_fit",
    "local_cost",
    "local_cost_table",
    "lardtw",
    "gardtw_affine_fit",
    "gardtw_objective",
    "gardtw",
]


@dataclass(frozen=True)
class WindowStats:
    """Running sums over a matched window: rho = sum(s*t), phi = sum(s),
    tau = sum(t), eta = sum(s^2), gamma = sum(t^2), and the offset count."""

    rho: float
    phi: float
    tau: float
    eta: float
    gamma: float
    count: int

    def __post_init__(self) -> None:
        if self.count < 1:
            raise ValueError("window must contain at least one matched offset")

    @classmethod
    def from_window(cls, s, t, a: int, b: int, w_h: int) -> "WindowStats":
        """Directly accumulate the sums for the window at 1-based (a, b)."""
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
        return cls(
            rho=float(sw.dot(tw)),
            phi=float(sw.sum()),
            tau=float(tw.sum()),
            eta=float(sw.dot(sw)),
            gamma=float(tw.dot(tw)),
            count=hi - lo + 1,
        )


def local_affine_fit(stats: WindowStats, bounds: ScalingBounds = ScalingBounds()) -> AffineParams:
    """Closed-form least-squares (c, e) for one window, clamped into bounds
    with the offset recomputed; a constant t-window falls back to c = 1."""
    c, e = _affine_from_stats(stats.rho, stats.phi, stats.tau, stats.gamma,
                              float(stats.count), bounds.c_min, bounds.c_max)
    return AffineParams(c, e)


def _residual_from_stats(stats: WindowStats, c: float, e: float) -> float:
    dl = (stats.eta - 2.0 * c * stats.rho - 2.0 * e * stats.phi
          + c * c * stats.gamma + 2.0 * c * e * stats.tau
          + stats.count * e * e) / stats.count
    return dl if dl > 0.0 else 0.0


def local_cost(s, t, a: int, b: int, w_h: int, bounds: ScalingBounds = ScalingBounds()) -> float:
    """Best windowed mean squared residual at (a, b) under the local fit."""
    stats = WindowStats.from_window(s, t, a, b, w_h)
    c, e = local_affine_fit(stats, bounds)
    return _residual_from_stats(stats, c, e)


@njit(cache=True, nogil=True)
def _fill_band_local(s, t, w, w_h, c_min, c_max):
    n = s.size
    m = t.size
    band = np.full((n, 2 * w + 1), np.inf)
    for diag in range(-w, w + 1):
        i = max(0, -diag)
        j = i + diag
        if j >= m or i >= n:
            continue
        rho = 0.0
        phi = 0.0
        tau = 0.0
        eta = 0.0
        gamma = 0.0
        cnt = 0
        step = 0
        while i < n and j < m:
            if step % _REANCHOR_EVERY == 0:
                rho = 0.0
                phi = 0.0
                tau = 0.0
                eta = 0.0
                gamma = 0.0
                cnt = 0
                lo = max(-w_h, -i, -j)
                hi = min(w_h, n - 1 - i, m - 1 - j)
                for off in range(lo, hi + 1):
                    sv = s[i + off]
                    tv = t[j + off]
                    rho += sv * tv
                    phi += sv
                    tau += tv
                    eta += sv * sv
                    gamma += tv * tv
                    cnt += 1
            else:
                if i - 1 - w_h >= 0 and j - 1 - w_h >= 0:
                    sv = s[i - 1 - w_h]
                    tv = t[j - 1 - w_h]
                    rho -= sv * tv
                    phi -= sv
                    tau -= tv
                    eta -= sv * sv
                    gamma -= tv * tv
                    cnt -= 1
                if i + w_h <= n - 1 and j + w_h <= m - 1:
                    sv = s[i + w_h]
                    tv = t[j + w_h]
                    rho += sv * tv
                    phi += sv
                    tau += tv
                    eta += sv * sv
                    gamma += tv * tv
                    cnt += 1
            wc = float(cnt)
            denom = gamma - tau * tau / wc
            if denom > _DEGENERATE_RTOL * abs(gamma) + 1e-300:
                c = (rho - phi * tau / wc) / denom
            else:
                c = 1.0
            if c < c_min:
                c = c_min
            elif c > c_max:
                c = c_max
            e = (phi - c * tau) / wc
            dl = (eta - 2.0 * c * rho - 2.0 * e * phi + c * c * gamma
                  + 2.0 * c * e * tau + wc * e * e) / wc
            band[i, j - i + w] = dl if dl > 0.0 else 0.0
            step += 1
            i += 1
            j += 1
    return band


def local_cost_table(s, t, band: BandConfig, w_h: int,
                     bounds: ScalingBounds = ScalingBounds()) -> CellCost:
    """In-band locally-fitted costs, equal to :func:`local_cost` per cell."""
    s = as_series(s)
    t = as_series(t)
    w_h = _check_region_half_width(w_h)
    if w_h == 0:
        raise ConfigError("local-affine alignment requires w_h >= 1; a two-parameter "
                          "fit on a single point makes every cell cost zero")
    w = band.effective_half_width(s.size, t.size)
    return CellCost(s.size, t.size, w, _fill_band_local(s, t, w, w_h, bounds.c_min, bounds.c_max))


def lardtw(s, t, band: BandConfig, w_h: int,
           bounds: ScalingBounds = ScalingBounds()) -> Alignment:
    """Local-affine regional DTW over the locally-fitted window costs."""
    cost = local_cost_table(s, t, band, w_h, bounds)
    path, total = dp_align(cost)
    return Alignment(path, total)


def gardtw_affine_fit(s, t, path: AlignmentPath, w_h: int,
                      bounds: ScalingBounds = ScalingBounds()) -> AffineParams:
    """Global (c, e) minimizing the window-averaged residual objective over a
    fixed path; with ``w_h = 0`` this is exactly the plain affine fit."""
    s = as_series(s)
    t = as_series(t)
    w_h = _check_region_half_width(w_h)
    if not validate_path(path, s.size, t.size):
        raise ValueError("path does not satisfy the alignment constraints for these series")
    pa, pb = _path_columns(path)
    rho, phi, tau, gamma = _path_window_stats(s, t, pa, pb, w_h)
    c, e = _affine_from_stats(rho, phi, tau, gamma, float(len(path)), bounds.c_min, bounds.c_max)
    return AffineParams(c, e)


def gardtw_objective(s, t, path: AlignmentPath, params, w_h: int) -> float:
    """Path sum of window-mean squared residuals of s against c*t + e."""
    s = as_series(s)
    t = as_series(t)
    c, e = params
    pa, pb = _path_columns(path)
    return float(_path_window_residual(s, t, pa, pb, w_h, c, e))


def gardtw(s, t, band: BandConfig, w_h: int, bounds: ScalingBounds = ScalingBounds(),
           em: EmConfig = EmConfig()) -> EmAlignment:
    """Global-affine regional DTW via hard EM; ``w_h = 0`` reproduces
    :func:`tsalign.affine.adtw` iterate for iterate."""
    s = as_series(s)
    t = as_series(t)
    w_h = _check_region_half_width(w_h)
    w = band.effective_half_width(s.size, t.size)
    pairs, c, e, measure, iters, objectives = _em_align(
        s, t, w, w_h, bounds.c_min, bounds.c_max, em.d_stop, em.max_iters)
    return EmAlignment(AlignmentPath(pairs), AffineParams(c, e), measure, iters, objectives)
