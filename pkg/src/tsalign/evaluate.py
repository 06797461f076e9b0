"""Alignment-quality scoring, 1-NN classification, tuning, and comparisons.

The displacement scores measure how far a produced alignment's matches sit
from the simulator ground truth, globally (``mg_score``) or restricted to
component-covered indices (``mc_score``).  Classification uses the leave-in
1-NN error rate of a chosen difference measure, with band and region widths
tuned by seeded 2-fold stratified cross-validation over ratio grids.
"""

from __future__ import annotations

import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from enum import Enum
from typing import NamedTuple, Optional, Sequence

import numpy as np
from scipy.stats import rankdata

from .affine import EmConfig, ScalingBounds, adtw
from .combined import gardtw, lardtw
from .core import AlignmentPath, BandConfig, dtw
from .errors import ConfigError, DataError
from .regional import rdtw
from .simulate import TrueAlignment

__all__ = [
    "MethodKind",
    "MethodConfig",
    "LabeledDataset",
    "TuningGrid",
    "TuneResult",
    "WinLoss",
    "mg_score",
    "mc_score",
    "dataset_mean_scores",
    "z_normalize",
    "compute_measure",
    "nn_predict",
    "one_nn",
    "tune_params",
    "win_loss",
    "average_ranks",
    "exceeds_critical_difference",
    "CRITICAL_DIFFERENCE",
]

# Rank-gap threshold for declaring two methods significantly different in the
# 12-method, 43-dataset comparison setting; treated as an input constant.
CRITICAL_DIFFERENCE = 2.356


class MethodKind(str, Enum):
    DTW = "dtw"
    ADTW = "adtw"
    RDTW = "rdtw"
    GARDTW = "gardtw"
    LARDTW = "lardtw"
    DTW_ZNORM = "dtw-znorm"

    @property
    def needs_region(self) -> bool:
        return self in (MethodKind.RDTW, MethodKind.GARDTW, MethodKind.LARDTW)


@dataclass(frozen=True)
class MethodConfig:
    """Per-run parameters: band half-width, region half-width where used,
    scaling bounds, and the EM stopping rule."""

    w_q: int = 0
    w_h: Optional[int] = None
    c_min: float = 0.2
    c_max: float = 5.0
    d_stop: float = 1e-5
    max_iters: int = 100

    @property
    def band(self) -> BandConfig:
        return BandConfig(self.w_q)

    @property
    def bounds(self) -> ScalingBounds:
        return ScalingBounds(self.c_min, self.c_max)

    @property
    def em(self) -> EmConfig:
        return EmConfig(self.d_stop, self.max_iters)


@dataclass(frozen=True, eq=False)
class LabeledDataset:
    """Equal-length labeled series, one row per item."""

    series: np.ndarray
    labels: np.ndarray

    def __post_init__(self) -> None:
        arr = np.ascontiguousarray(self.series, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise DataError(f"series must form a non-empty 2-D array, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise DataError("series values must be finite")
        labels = np.asarray(self.labels)
        if labels.shape != (arr.shape[0],):
            raise DataError(f"need one label per series, got {labels.shape} for {arr.shape[0]} items")
        object.__setattr__(self, "series", arr)
        object.__setattr__(self, "labels", labels)

    def __len__(self) -> int:
        return self.series.shape[0]

    @property
    def length(self) -> int:
        return self.series.shape[1]

    def subset(self, idx) -> "LabeledDataset":
        return LabeledDataset(self.series[idx], self.labels[idx])


@dataclass(frozen=True)
class TuningGrid:
    """Ratio grids for the band and region half-widths."""

    wq_ratios: tuple = tuple(round(0.05 * i, 2) for i in range(11))
    wh_ratios: tuple = tuple(round(0.05 * i, 2) for i in range(1, 11))

    def __post_init__(self) -> None:
        for r in tuple(self.wq_ratios) + tuple(self.wh_ratios):
            if not 0.0 <= r <= 0.5:
                raise ConfigError(f"grid ratios must lie in [0, 0.5], got {r}")


class TuneResult(NamedTuple):
    w_q: int
    w_h: Optional[int]
    cv_error: float


class WinLoss(NamedTuple):
    ratio: float
    wins: int
    ties: int
    losses: int


def _pairs_of(path) -> np.ndarray:
    if isinstance(path, (AlignmentPath, TrueAlignment)):
        return path.pairs
    return np.ascontiguousarray(path, dtype=np.int64)


def _displacement_score(truth_pairs: np.ndarray, path_pairs: np.ndarray, n: int,
                        mask: Optional[np.ndarray]) -> float:
    if n < 2:
        raise ValueError("displacement scores need n >= 2")
    ta = truth_pairs[:, 0]
    tb = truth_pairs[:, 1]
    if mask is not None:
        keep = mask[ta - 1]
        ta, tb = ta[keep], tb[keep]
    if ta.size == 0:
        return 0.0
    pa = path_pairs[:, 0]
    pb = path_pairs[:, 1]
    if np.any(np.diff(pa) < 0):
        raise ValueError("alignment pairs must be sorted by the s-index")
    left = np.searchsorted(pa, ta, side="left")
    right = np.searchsorted(pa, ta, side="right")
    if np.any(left == right):
        raise ValueError("alignment has no match for an s-index present in the truth")
    total = 0
    for lo, hi, b in zip(left, right, tb):
        total += np.abs(pb[lo:hi] - b).min()
    return float(total) / (n * (n - 1) / 2)


def mg_score(truth: TrueAlignment, path, n: int) -> float:
    """Mean displacement of matches from the ground truth over all s-indices,
    normalized by n(n-1)/2.  Lower is better; 0 means every true match is
    reproduced exactly."""
    return _displacement_score(truth.pairs, _pairs_of(path), n, None)


def dataset_mean_scores(scores_by_dataset) -> tuple[np.ndarray, float]:
    """Two-level aggregation of per-instance scores: the mean within each
    dataset, then the mean of those dataset means."""
    means = np.array([float(np.mean(np.asarray(s, dtype=np.float64)))
                      for s in scores_by_dataset])
    if means.size == 0:
        raise ValueError("need at least one dataset of scores")
    return means, float(means.mean())


def mc_score(truth: TrueAlignment, path, n: int) -> float:
    """Like :func:`mg_score` but summed only over s-indices flagged as
    belonging to a component."""
    if truth.component_mask is None:
        raise ValueError("mc_score requires a truth with a component mask")
    return _displacement_score(truth.pairs, _pairs_of(path), n, truth.component_mask)


def z_normalize(s) -> np.ndarray:
    """Subtract the mean and divide by the population standard deviation;
    a constant series maps to all zeros (with a warning)."""
    arr = np.ascontiguousarray(s, dtype=np.float64)
    sd = arr.std()
    if sd == 0.0:
        warnings.warn("z-normalizing a constant series; returning all zeros")
        return np.zeros_like(arr)
    return (arr - arr.mean()) / sd


def compute_measure(method: MethodKind, s, t, cfg: MethodConfig) -> float:
    """Difference measure between two series under the chosen method."""
    band = cfg.band
    if method == MethodKind.DTW:
        return dtw(s, t, band).measure
    if method == MethodKind.DTW_ZNORM:
        return dtw(z_normalize(s), z_normalize(t), band).measure
    if method == MethodKind.ADTW:
        return adtw(s, t, band, cfg.bounds, cfg.em).measure
    if method.needs_region:
        if cfg.w_h is None:
            raise ConfigError(f"{method.value} requires a region half-width w_h")
        if method == MethodKind.RDTW:
            return rdtw(s, t, band, cfg.w_h).measure
        if method == MethodKind.GARDTW:
            return gardtw(s, t, band, cfg.w_h, cfg.bounds, cfg.em).measure
        return lardtw(s, t, band, cfg.w_h, cfg.bounds).measure
    raise ConfigError(f"unknown method {method!r}")


def nn_predict(train: LabeledDataset, test: LabeledDataset, method: MethodKind,
               cfg: MethodConfig, jobs: int = 1) -> tuple[np.ndarray, np.ndarray]:
    """Nearest-neighbor labels and training indices for every test item.

    Ties on the measure resolve to the first occurrence in training order.
    """
    if len(train) == 0:
        raise ConfigError("nearest-neighbor classification needs a non-empty training set")

    def nearest(i: int) -> int:
        row = test.series[i]
        best = np.inf
        best_j = 0
        for j in range(len(train)):
            d = compute_measure(method, row, train.series[j], cfg)
            if d < best:
                best = d
                best_j = j
        return best_j

    if jobs == 1:
        idx = [nearest(i) for i in range(len(test))]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            idx = list(pool.map(nearest, range(len(test))))
    idx = np.asarray(idx, dtype=np.int64)
    return train.labels[idx], idx


def one_nn(train: LabeledDataset, test: LabeledDataset, method: MethodKind,
           cfg: MethodConfig, jobs: int = 1) -> float:
    """1-NN error rate of the method's difference measure."""
    pred, _ = nn_predict(train, test, method, cfg, jobs=jobs)
    return float(np.mean(pred != test.labels))


def _stratified_folds(labels: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Alternating two-fold assignment within each shuffled class."""
    folds = np.zeros(labels.shape[0], dtype=np.int64)
    for label in dict.fromkeys(labels.tolist()):
        idx = np.flatnonzero(labels == label)
        if idx.size == 1:
            warnings.warn(f"class {label!r} has a single item; placing it in fold 1")
            folds[idx] = 0
            continue
        perm = idx.copy()
        rng.shuffle(perm)
        folds[perm] = np.arange(perm.size) % 2
    return folds


def tune_params(train: LabeledDataset, method: MethodKind, grid: TuningGrid = TuningGrid(),
                seed: int = 0, cfg: MethodConfig = MethodConfig(), jobs: int = 1) -> TuneResult:
    """Pick (w_q, w_h) minimizing the seeded 2-fold stratified CV error.

    Ratios convert to sample counts by rounding against the series length.
    Ties resolve toward the smaller w_q, then the smaller w_h.
    """
    rng = np.random.default_rng(seed)
    folds = _stratified_folds(train.labels, rng)
    fold_a = train.subset(folds == 0)
    fold_b = train.subset(folds == 1)
    if len(fold_a) == 0 or len(fold_b) == 0:
        raise ConfigError("cross-validation needs items in both folds")

    length = train.length
    # ascending order makes the strict-improvement scan break ties toward the
    # smaller w_q, then the smaller w_h
    wq_values = sorted({int(np.rint(r * length)) for r in grid.wq_ratios})
    if method.needs_region:
        wh_values = [int(np.rint(r * length)) for r in grid.wh_ratios]
        if method == MethodKind.LARDTW:
            wh_values = [max(1, w) for w in wh_values]
        wh_values = sorted(set(wh_values))
    else:
        wh_values = [None]
    points = [(wq, wh) for wq in wq_values for wh in wh_values]

    best = None
    best_err = np.inf
    for wq, wh in points:
        trial = replace(cfg, w_q=wq, w_h=wh)
        err = 0.5 * (one_nn(fold_a, fold_b, method, trial, jobs=jobs)
                     + one_nn(fold_b, fold_a, method, trial, jobs=jobs))
        if err < best_err:
            best_err = err
            best = (wq, wh)
    return TuneResult(best[0], best[1], best_err)


def win_loss(errors_a: Sequence[float], errors_b: Sequence[float]) -> WinLoss:
    """Per-dataset win/tie/loss counts of a against b and the ratio
    (wins + 0.5*ties) / (losses + 0.5*ties); +inf when b never wins."""
    a = np.asarray(errors_a, dtype=np.float64)
    b = np.asarray(errors_b, dtype=np.float64)
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError(f"need equal-length 1-D error lists, got {a.shape} and {b.shape}")
    wins = int(np.sum(a < b))
    losses = int(np.sum(a > b))
    ties = int(np.sum(a == b))
    denom = losses + 0.5 * ties
    ratio = float("inf") if denom == 0 else (wins + 0.5 * ties) / denom
    return WinLoss(float(ratio), wins, ties, losses)


def average_ranks(errors) -> np.ndarray:
    """Mean rank per method over datasets; ranks are by ascending error within
    each dataset, ties sharing the mean of their rank span."""
    mat = np.asarray(errors, dtype=np.float64)
    if mat.ndim != 2:
        raise ValueError("expected a (methods, datasets) error matrix")
    ranks = np.empty_like(mat)
    for col in range(mat.shape[1]):
        ranks[:, col] = rankdata(mat[:, col], method="average")
    return ranks.mean(axis=1)


def exceeds_critical_difference(ranks, critical_difference: float = CRITICAL_DIFFERENCE) -> np.ndarray:
    """Boolean matrix of method pairs whose average-rank gap exceeds the
    critical difference."""
    r = np.asarray(ranks, dtype=np.float64)
    return np.abs(r[:, None] - r[None, :]) > critical_difference
