"""Affine DTW: joint estimation of alignment, amplitude scaling, and offset.

The objective sums squared residuals between s and c*t + e over the matched
pairs.  Hard EM alternates (i) an optimal path for the current (c, e) and
(ii) the least-squares (c, e) for the current path, so the objective never
increases across iterations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from ._fit import _affine_from_stats, _em_align, _path_window_residual, _path_window_stats
from .core import AlignmentPath, BandConfig, as_series, validate_path
from .errors import ConfigError

__all__ = [
    "AffineParams",
    "ScalingBounds",
    "EmConfig",
    "EmAlignment",
    "affine_fit",
    "apply_affine",
    "affine_objective",
    "adtw",
]


class AffineParams(NamedTuple):
    """Amplitude scaling ``c`` and offset ``e`` applied as c*t + e."""

    c: float
    e: float


@dataclass(frozen=True)
class ScalingBounds:
    """Allowed scaling range; fits clamp c into [c_min, c_max]."""

    c_min: float = 0.2
    c_max: float = 5.0

    def __post_init__(self) -> None:
        if not self.c_min <= self.c_max:
            raise ConfigError(f"need c_min <= c_max, got ({self.c_min}, {self.c_max})")

    @classmethod
    def unbounded(cls) -> "ScalingBounds":
        return cls(-np.inf, np.inf)


@dataclass(frozen=True)
class EmConfig:
    """Stopping rule for the hard-EM loop."""

    d_stop: float = 1e-5
    max_iters: int = 100

    def __post_init__(self) -> None:
        if not self.d_stop > 0:
            raise ConfigError(f"d_stop must be positive, got {self.d_stop}")
        if int(self.max_iters) != self.max_iters or self.max_iters < 1:
            raise ConfigError(f"max_iters must be a positive integer, got {self.max_iters}")


class EmAlignment(NamedTuple):
    path: AlignmentPath
    params: AffineParams
    measure: float
    iterations: int
    objectives: np.ndarray


def _path_columns(path: AlignmentPath) -> tuple[np.ndarray, np.ndarray]:
    pairs0 = path.pairs - 1
    return np.ascontiguousarray(pairs0[:, 0]), np.ascontiguousarray(pairs0[:, 1])


def affine_fit(s, t, path: AlignmentPath, bounds: ScalingBounds = ScalingBounds()) -> AffineParams:
    """Least-squares (c, e) minimizing the squared residual of s against
    c*t + e over the matched pairs of ``path``.

    The scaling is clamped into ``bounds`` with the offset recomputed for the
    clamped value; if the matched t-values are all equal the fit falls back to
    c = 1 and the mean offset.
    """
    s = as_series(s)
    t = as_series(t)
    if not validate_path(path, s.size, t.size):
        raise ValueError("path does not satisfy the alignment constraints for these series")
    pa, pb = _path_columns(path)
    rho, phi, tau, gamma = _path_window_stats(s, t, pa, pb, 0)
    c, e = _affine_from_stats(rho, phi, tau, gamma, float(len(path)), bounds.c_min, bounds.c_max)
    return AffineParams(c, e)


def apply_affine(t, params: AffineParams) -> np.ndarray:
    """Elementwise c*t + e."""
    return params.c * as_series(t) + params.e


def affine_objective(s, t, path: AlignmentPath, params) -> float:
    """Sum of squared residuals of s against c*t + e over the path."""
    s = as_series(s)
    t = as_series(t)
    c, e = params
    pa, pb = _path_columns(path)
    return float(_path_window_residual(s, t, pa, pb, 0, c, e))


def adtw(s, t, band: BandConfig, bounds: ScalingBounds = ScalingBounds(),
         em: EmConfig = EmConfig()) -> EmAlignment:
    """Affine DTW via hard EM, starting from (c, e) = (1, 0).

    Each iteration aligns s against the current c*t + e, then refits (c, e)
    on the new path.  Returns the final path, fitted parameters, objective
    value, iteration count, and the per-iteration objective sequence.
    """
    s = as_series(s)
    t = as_series(t)
    w = band.effective_half_width(s.size, t.size)
    pairs, c, e, measure, iters, objectives = _em_align(
        s, t, w, 0, bounds.c_min, bounds.c_max, em.d_stop, em.max_iters)
    return EmAlignment(AlignmentPath(pairs), AffineParams(c, e), measure, iters, objectives)
