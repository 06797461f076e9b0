"""Path-level window statistics, least-squares fits, and the hard-EM driver.

Internal helpers shared by the global-affine aligners.  Window statistics are
computed per matched pair over offsets ``-w_h..w_h`` clipped to both series,
then summed over the path as window means; ``w_h = 0`` reduces every window to
its center point, which recovers the plain pointwise sums.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .core import _backtrack, _dp_band, _fill_band_pointwise
from .regional import _fill_band_regional

# Relative threshold on the fit denominator below which the matched window of
# t is treated as constant.
_DEGENERATE_RTOL = 1e-12


@njit(cache=True, nogil=True)
def _path_window_stats(s, t, pa, pb, w_h):
    # Sums over the path of window-mean cross/sum statistics; pa/pb 0-based.
    n = s.size
    m = t.size
    rho_total = 0.0
    phi_total = 0.0
    tau_total = 0.0
    gamma_total = 0.0
    for k in range(pa.size):
        i = pa[k]
        j = pb[k]
        lo = max(-w_h, -i, -j)
        hi = min(w_h, n - 1 - i, m - 1 - j)
        rho = 0.0
        phi = 0.0
        tau = 0.0
        gamma = 0.0
        cnt = 0
        for off in range(lo, hi + 1):
            sv = s[i + off]
            tv = t[j + off]
            rho += sv * tv
            phi += sv
            tau += tv
            gamma += tv * tv
            cnt += 1
        wc = float(cnt)
        rho_total += rho / wc
        phi_total += phi / wc
        tau_total += tau / wc
        gamma_total += gamma / wc
    return rho_total, phi_total, tau_total, gamma_total


@njit(cache=True, nogil=True)
def _path_window_residual(s, t, pa, pb, w_h, c, e):
    # Objective value: path sum of window-mean squared residuals against c*t+e.
    n = s.size
    m = t.size
    total = 0.0
    for k in range(pa.size):
        i = pa[k]
        j = pb[k]
        lo = max(-w_h, -i, -j)
        hi = min(w_h, n - 1 - i, m - 1 - j)
        acc = 0.0
        cnt = 0
        for off in range(lo, hi + 1):
            d = s[i + off] - (c * t[j + off] + e)
            acc += d * d
            cnt += 1
        total += acc / cnt
    return total


def _affine_from_stats(rho: float, phi: float, tau: float, gamma: float,
                       count: float, c_min: float, c_max: float) -> tuple[float, float]:
    """Least-squares scaling and offset from raw sums.

    The scaling is clamped into [c_min, c_max] and the offset recomputed as
    the conditional optimum for the clamped scaling.  A degenerate denominator
    (matched t-values all equal) falls back to neutral scaling.
    """
    denom = gamma - tau * tau / count
    if denom > _DEGENERATE_RTOL * abs(gamma) + 1e-300:
        c = (rho - phi * tau / count) / denom
    else:
        c = 1.0
    if c < c_min:
        c = c_min
    elif c > c_max:
        c = c_max
    e = (phi - c * tau) / count
    return c, e


def _em_align(s, t, w, w_h, c_min, c_max, d_stop, max_iters):
    """Alternate optimal-path and optimal-(c, e) steps from (c, e) = (1, 0).

    Stops once the objective decrease drops below ``d_stop`` or ``max_iters``
    is reached, returning the last computed iterate.
    """
    n = s.size
    m = t.size
    c, e = 1.0, 0.0
    prev = np.inf
    objectives = []
    pairs0 = None
    for v in range(1, max_iters + 1):
        t_fit = c * t + e
        if w_h == 0:
            band_vals = _fill_band_pointwise(s, t_fit, w)
        else:
            band_vals = _fill_band_regional(s, t_fit, w, w_h)
        _, steps = _dp_band(band_vals, n, m, w)
        pairs0 = _backtrack(steps, n, m, w)
        pa = np.ascontiguousarray(pairs0[:, 0])
        pb = np.ascontiguousarray(pairs0[:, 1])
        rho, phi, tau, gamma = _path_window_stats(s, t, pa, pb, w_h)
        c, e = _affine_from_stats(rho, phi, tau, gamma, float(pairs0.shape[0]), c_min, c_max)
        obj = _path_window_residual(s, t, pa, pb, w_h, c, e)
        objectives.append(obj)
        if prev - obj < d_stop:
            break
        prev = obj
    return pairs0 + 1, c, e, objectives[-1], len(objectives), np.asarray(objectives)
