"""Tuned 1-NN classification with elastic difference measures.

Builds a small two-class dataset (sines vs squares with noise), tunes band
and region widths by 2-fold stratified cross-validation, evaluates the 1-NN
error of several measures, and summarizes the comparison with win-loss
ratios and average ranks.
"""

import numpy as np

from tsalign import (
    LabeledDataset,
    MethodConfig,
    MethodKind,
    TuningGrid,
    average_ranks,
    one_nn,
    tune_params,
    win_loss,
)

rng = np.random.default_rng(5)
n = 40
x = np.linspace(0, 1, n)
rows, labels = [], []
for _ in range(16):
    rows.append(np.sin(2 * np.pi * x) + 0.3 * rng.normal(size=n))
    labels.append("sine")
    rows.append(np.sign(np.sin(2 * np.pi * x)) + 0.3 * rng.normal(size=n))
    labels.append("square")
data = LabeledDataset(np.array(rows), np.array(labels, dtype=object))
train = data.subset(np.arange(0, 16))
test = data.subset(np.arange(16, 32))

grid = TuningGrid(wq_ratios=(0.0, 0.1, 0.2), wh_ratios=(0.05, 0.1, 0.2))
methods = [MethodKind.DTW, MethodKind.RDTW, MethodKind.DTW_ZNORM]
errors = []
for method in methods:
    tuned = tune_params(train, method, grid, seed=0)
    cfg = MethodConfig(w_q=tuned.w_q, w_h=tuned.w_h)
    err = one_nn(train, test, method, cfg)
    errors.append(err)
    print(f"{method.value:<10} tuned w_q={tuned.w_q} w_h={tuned.w_h} "
          f"cv_error={tuned.cv_error:.3f} test_error={err:.3f}")

print("\npairwise win-loss (rows vs columns, across the one dataset):")
for i, mi in enumerate(methods):
    for j, mj in enumerate(methods):
        if i < j:
            wl = win_loss([errors[i]], [errors[j]])
            print(f"  {mi.value} vs {mj.value}: ratio={wl.ratio:.1f} "
                  f"({wl.wins},{wl.ties},{wl.losses})")

ranks = average_ranks(np.array(errors)[:, None])
print("\naverage ranks:", {m.value: float(r) for m, r in zip(methods, ranks)})
