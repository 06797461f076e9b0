"""Ground-truth generators for alignment evaluation.

Two families: a global warp-and-affine transform of a base series, where the
warp is a random monotone index sequence of matches, deletes, and inserts;
and a component-superposition synthesizer that places shared-shape windowed
components at independent locations, widths, and amplitudes in two series.
Both emit the known true alignment alongside the generated data.

All sampling takes an explicit ``numpy.random.Generator``; nothing touches
global RNG state.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .core import as_series
from .errors import ConfigError

__all__ = [
    "WarpConfig",
    "GlobalAffineConfig",
    "ComponentConfig",
    "TrueAlignment",
    "Component",
    "GlobalAffineInstance",
    "ComponentInstance",
    "sample_warp",
    "global_affine_instance",
    "window_component",
    "component_truth",
    "component_instance",
]


@dataclass(frozen=True)
class WarpConfig:
    """Step distribution of the random monotone warp sequence."""

    p_match: float = 0.6
    p_delete: float = 0.2
    p_insert: float = 0.2

    def __post_init__(self) -> None:
        probs = (self.p_match, self.p_delete, self.p_insert)
        if any(p < 0 or p > 1 for p in probs):
            raise ConfigError(f"probabilities must lie in [0, 1], got {probs}")
        if abs(sum(probs) - 1.0) > 1e-12:
            raise ConfigError(f"probabilities must sum to 1, got {sum(probs)}")
        if self.p_insert >= 1.0 - 1e-12:
            raise ConfigError("p_insert = 1 never advances the warp, so the sequence "
                              "cannot terminate")

    @property
    def p_w(self) -> float:
        """Warping probability 2*p_delete (= 2*p_insert for symmetric warps)."""
        return 2.0 * self.p_delete


@dataclass(frozen=True)
class GlobalAffineConfig:
    """Scaling/offset ranges and additive-noise level for warped variants."""

    c_range: tuple[float, float] = (0.2, 5.0)
    e_range: tuple[float, float] = (0.0, 0.0)
    noise_sigma: float = 0.0

    def __post_init__(self) -> None:
        if self.c_range[0] > self.c_range[1] or self.e_range[0] > self.e_range[1]:
            raise ConfigError("ranges must satisfy low <= high")
        if self.noise_sigma < 0:
            raise ConfigError(f"noise_sigma must be non-negative, got {self.noise_sigma}")

    @classmethod
    def for_dataset_sigma(cls, sigma: float, noise_level: float = 0.0,
                          c_range: tuple[float, float] = (0.2, 5.0)) -> "GlobalAffineConfig":
        """Offsets uniform on [-sigma, sigma] and noise of noise_level*sigma,
        with sigma the amplitude standard deviation of the source data."""
        return cls(c_range=c_range, e_range=(-sigma, sigma), noise_sigma=noise_level * sigma)


@dataclass(frozen=True, eq=False)
class TrueAlignment:
    """Simulator ground truth: a monotone match set, possibly many-to-one in
    either coordinate, plus an optional per-s-index component membership mask."""

    pairs: np.ndarray
    component_mask: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        arr = np.ascontiguousarray(self.pairs, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[1] != 2 or arr.shape[0] < 1:
            raise ValueError(f"truth pairs must have shape (K, 2) with K >= 1, got {arr.shape}")
        if arr.min() < 1:
            raise ValueError("truth indices are 1-based and must be >= 1")
        d = np.diff(arr, axis=0)
        if np.any(d < 0):
            raise ValueError("truth pairs must be sorted and monotone non-decreasing")
        object.__setattr__(self, "pairs", arr)
        if self.component_mask is not None:
            mask = np.ascontiguousarray(self.component_mask, dtype=bool)
            object.__setattr__(self, "component_mask", mask)

    @property
    def a(self) -> np.ndarray:
        return self.pairs[:, 0]

    @property
    def b(self) -> np.ndarray:
        return self.pairs[:, 1]


class GlobalAffineInstance(NamedTuple):
    t: np.ndarray
    truth: TrueAlignment
    scale: float
    offset: float
    omega: np.ndarray


class Component(NamedTuple):
    kind: int
    center_s: int
    center_t: int
    width_s: int
    width_t: int
    amp_s: float
    amp_t: float


class ComponentInstance(NamedTuple):
    s: np.ndarray
    t: np.ndarray
    truth: TrueAlignment
    components: list


def sample_warp(n: int, cfg: WarpConfig, rng: np.random.Generator) -> tuple[np.ndarray, TrueAlignment]:
    """Random monotone warp of index range 1..n.

    Starts at 1 and repeatedly advances by 1 (match), 2 (delete), or 0
    (insert); the sequence ends when the next value would exceed n.  Returns
    the index sequence and the raw truth pairing (omega(j), j).
    """
    if n < 2:
        raise ConfigError(f"warp needs a base length of at least 2, got {n}")
    omega = [1]
    while True:
        u = rng.random()
        if u < cfg.p_match:
            step = 1
        elif u < cfg.p_match + cfg.p_delete:
            step = 2
        else:
            step = 0
        nxt = omega[-1] + step
        if nxt > n:
            break
        omega.append(nxt)
    omega_arr = np.asarray(omega, dtype=np.int64)
    z = omega_arr.size
    pairs = np.column_stack([omega_arr, np.arange(1, z + 1, dtype=np.int64)])
    return omega_arr, TrueAlignment(pairs)


def global_affine_instance(s, warp: WarpConfig, affine: GlobalAffineConfig,
                           rng: np.random.Generator) -> GlobalAffineInstance:
    """Warped, rescaled, offset, and optionally noisy variant of ``s``.

    The warped series is linearly resampled back to length n and the raw
    truth remapped through the resampling: raw pair j lands on resampled
    index round(1 + (j-1)(n-1)/(z-1)), with duplicate pairs collapsed.
    """
    s = as_series(s)
    n = s.size
    omega, raw = sample_warp(n, warp, rng)
    z = omega.size
    psi = s[omega - 1]
    if z == 1:
        resampled = np.full(n, psi[0])
        b_idx = np.arange(1, n + 1, dtype=np.int64)
        pairs = np.column_stack([np.full(n, omega[0], dtype=np.int64), b_idx])
    else:
        positions = np.linspace(1.0, float(z), n)
        resampled = np.interp(positions, np.arange(1, z + 1, dtype=np.float64), psi)
        b_idx = np.rint(1.0 + (np.arange(z) * (n - 1)) / (z - 1)).astype(np.int64)
        pairs = np.unique(np.column_stack([raw.pairs[:, 0], b_idx]), axis=0)
    c_bar = rng.uniform(affine.c_range[0], affine.c_range[1])
    e_bar = rng.uniform(affine.e_range[0], affine.e_range[1])
    t = c_bar * resampled + e_bar
    if affine.noise_sigma > 0:
        t = t + rng.normal(0.0, affine.noise_sigma, n)
    return GlobalAffineInstance(t, TrueAlignment(pairs), float(c_bar), float(e_bar), omega)


# Flat-top cosine coefficients (standard 5-term spectral-analysis window),
# normalized to unit peak at the center.
_FLATTOP_COEFFS = np.array([0.21557895, 0.41663158, 0.277263158, 0.083578947, 0.006947368])


def _window_shape(kind: int, half: int) -> np.ndarray:
    if half == 0:
        return np.ones(1)
    x = np.arange(-half, half + 1) / half
    ax = np.abs(x)
    if kind == 1:  # Parzen, piecewise cubic
        return np.where(ax <= 0.5, 1.0 - 6.0 * x * x * (1.0 - ax), 2.0 * (1.0 - ax) ** 3)
    if kind == 2:  # rectangular
        return np.ones(x.size)
    if kind == 3:  # triangular (Bartlett)
        return 1.0 - ax
    if kind == 4:  # flat top
        vals = np.zeros(x.size)
        for k, coeff in enumerate(_FLATTOP_COEFFS):
            vals += coeff * np.cos(np.pi * k * x)
        return vals / _FLATTOP_COEFFS.sum()
    raise ConfigError(f"unknown window kind {kind}; expected 1 (Parzen), 2 (rectangular), "
                      "3 (triangular), or 4 (flat top)")


def window_component(z: int, center: int, width: int, n: int) -> np.ndarray:
    """Length-n series carrying one unit-peak window of the given kind,
    centered at the 1-based ``center`` and zero outside
    [center - width//2, center + width//2] (clipped to the series)."""
    if width < 1:
        raise ConfigError(f"width must be >= 1, got {width}")
    if not 1 <= center <= n:
        raise ConfigError(f"center must lie in [1, {n}], got {center}")
    half = width // 2
    shape = _window_shape(z, half)
    out = np.zeros(n)
    lo = max(1, center - half)
    hi = min(n, center + half)
    out[lo - 1 : hi] = shape[(lo - center + half) : (hi - center + half) + 1]
    return out


def _draw_ordered_locations(n_components: int, lo: int, hi: int,
                            rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    # Rejection-sample both location vectors until the chronological order of
    # components agrees between the two series.
    for _ in range(100_000):
        loc_s = rng.integers(lo, hi + 1, n_components)
        loc_t = rng.integers(lo, hi + 1, n_components)
        if np.array_equal(np.argsort(loc_s, kind="stable"), np.argsort(loc_t, kind="stable")):
            return loc_s, loc_t
    raise ConfigError("could not draw order-consistent component locations")


def component_truth(loc_s, loc_t, widths_s, widths_t, n: int) -> TrueAlignment:
    """True alignment of two component-superposition series.

    Each s-index inside a component window maps to the same relative position
    in the matched component of t; where windows overlap, the component with
    the nearest center claims the index (ties to the leftmost center, then
    the earlier component).  The t-side indices are clipped to the series and
    forced non-decreasing so the truth stays monotone.
    """
    loc_s = np.asarray(loc_s, dtype=np.int64)
    loc_t = np.asarray(loc_t, dtype=np.int64)
    halves_s = np.asarray(widths_s, dtype=np.int64) // 2
    halves_t = np.asarray(widths_t, dtype=np.int64) // 2
    k = loc_s.size
    mask = np.zeros(n, dtype=bool)
    pairs = []
    prev_b = 1
    for i in range(1, n + 1):
        best = -1
        best_key = None
        for j in range(k):
            if abs(i - loc_s[j]) <= halves_s[j]:
                key = (abs(i - int(loc_s[j])), int(loc_s[j]), j)
                if best < 0 or key < best_key:
                    best = j
                    best_key = key
        if best < 0:
            continue
        mask[i - 1] = True
        rel = 0.0 if halves_s[best] == 0 else (i - int(loc_s[best])) / int(halves_s[best])
        b = int(loc_t[best]) + int(np.rint(rel * int(halves_t[best])))
        b = min(max(b, 1), n)
        b = max(b, prev_b)
        prev_b = b
        pairs.append((i, b))
    if not pairs:
        raise ConfigError("no s-index is covered by any component window")
    return TrueAlignment(np.asarray(pairs, dtype=np.int64), component_mask=mask)


def component_instance(cfg: "ComponentConfig", rng: np.random.Generator) -> ComponentInstance:
    """Pair of component-superposition series with their true alignment.

    Component shape kinds are shared between the series; widths, locations,
    and folded-normal amplitudes are drawn independently, with locations
    rejection-sampled so that component chronological order matches.
    """
    n = cfg.n
    k = cfg.n_components
    kinds = rng.integers(cfg.z_range[0], cfg.z_range[1] + 1, k)
    widths_s = rng.integers(cfg.width_range[0], cfg.width_range[1] + 1, k)
    widths_t = rng.integers(cfg.width_range[0], cfg.width_range[1] + 1, k)
    loc_s, loc_t = _draw_ordered_locations(k, cfg.location_range[0], cfg.location_range[1], rng)
    amp_s = np.abs(rng.normal(cfg.amp_mean, cfg.amp_sigma, k))
    amp_t = np.abs(rng.normal(cfg.amp_mean, cfg.amp_sigma, k))

    s = np.zeros(n)
    t = np.zeros(n)
    for j in range(k):
        s += amp_s[j] * window_component(int(kinds[j]), int(loc_s[j]), int(widths_s[j]), n)
        t += amp_t[j] * window_component(int(kinds[j]), int(loc_t[j]), int(widths_t[j]), n)

    truth = component_truth(loc_s, loc_t, widths_s, widths_t, n)
    components = [Component(int(kinds[j]), int(loc_s[j]), int(loc_t[j]),
                            int(widths_s[j]), int(widths_t[j]),
                            float(amp_s[j]), float(amp_t[j])) for j in range(k)]
    return ComponentInstance(s, t, truth, components)


@dataclass(frozen=True)
class ComponentConfig:
    """Component-superposition parameters; width and location ranges default
    to (n/(2*n_components), n/n_components) and (1, n)."""

    n: int = 400
    n_components: int = 4
    z_range: tuple[int, int] = (1, 4)
    width_range: Optional[tuple[int, int]] = None
    location_range: Optional[tuple[int, int]] = None
    amp_mean: float = 1.0
    amp_sigma: float = 0.0

    def __post_init__(self) -> None:
        if self.n < 1 or self.n_components < 1:
            raise ConfigError("need n >= 1 and n_components >= 1")
        if not 1 <= self.z_range[0] <= self.z_range[1] <= 4:
            raise ConfigError(f"z_range must satisfy 1 <= z_min <= z_max <= 4, got {self.z_range}")
        if self.width_range is None:
            object.__setattr__(self, "width_range",
                               (max(1, self.n // (2 * self.n_components)),
                                max(1, self.n // self.n_components)))
        if self.location_range is None:
            object.__setattr__(self, "location_range", (1, self.n))
        if self.width_range[0] < 1 or self.width_range[0] > self.width_range[1]:
            raise ConfigError(f"invalid width_range {self.width_range}")
        lo, hi = self.location_range
        if lo < 1 or hi > self.n or lo > hi:
            raise ConfigError(f"invalid location_range {self.location_range}")
        if self.amp_sigma < 0:
            raise ConfigError(f"amp_sigma must be non-negative, got {self.amp_sigma}")
