"""Scores, 1-NN classification, tuning, win-loss, ranks, normalization."""

import numpy as np
import pytest

from tsalign import (
    AlignmentPath,
    ConfigError,
    LabeledDataset,
    MethodConfig,
    MethodKind,
    TrueAlignment,
    TuningGrid,
    average_ranks,
    exceeds_critical_difference,
    mc_score,
    mg_score,
    one_nn,
    tune_params,
    win_loss,
    z_normalize,
)
from tsalign.evaluate import nn_predict


def path_of(pairs):
    return AlignmentPath(np.asarray(pairs, dtype=np.int64))


def diagonal_truth(n, mask=None):
    idx = np.arange(1, n + 1)
    return TrueAlignment(np.column_stack([idx, idx]), component_mask=mask)


class TestMgScore:
    def test_truth_reproduced_scores_zero(self):
        truth = diagonal_truth(5)
        assert mg_score(truth, path_of(truth.pairs), 5) == 0.0

    def test_hand_example(self):
        truth = diagonal_truth(3)
        p = path_of([(1, 1), (2, 1), (3, 2), (3, 3)])
        assert mg_score(truth, p, 3) == pytest.approx(1.0 / 3.0)

    def test_displacement_grows_with_distance(self):
        truth = diagonal_truth(4)
        near = path_of([(1, 1), (2, 2), (3, 2), (4, 3), (4, 4)])
        far = path_of([(1, 1), (2, 1), (3, 1), (4, 2), (4, 3), (4, 4)])
        assert mg_score(truth, near, 4) < mg_score(truth, far, 4)

    def test_missing_coverage_rejected(self):
        truth = diagonal_truth(3)
        assert mg_score(truth, truth, 3) == 0.0
        sparse = TrueAlignment(np.array([[1, 1], [3, 3]]))
        with pytest.raises(ValueError):
            mg_score(truth, sparse, 3)


class TestMcScore:
    def test_requires_mask(self):
        with pytest.raises(ValueError):
            mc_score(diagonal_truth(3), path_of([(1, 1), (2, 2), (3, 3)]), 3)

    def test_empty_mask_is_vacuous(self):
        truth = diagonal_truth(4, mask=np.zeros(4, dtype=bool))
        p = path_of([(1, 1), (2, 1), (3, 2), (4, 3), (4, 4)])
        assert mc_score(truth, p, 4) == 0.0

    def test_full_mask_equals_mg(self):
        truth = diagonal_truth(4, mask=np.ones(4, dtype=bool))
        p = path_of([(1, 1), (2, 1), (3, 2), (4, 3), (4, 4)])
        assert mc_score(truth, p, 4) == mg_score(truth, p, 4)

    def test_partial_mask_limits_sum(self):
        mask = np.array([True, False, False, False])
        truth = diagonal_truth(4, mask=mask)
        p = path_of([(1, 1), (2, 1), (3, 2), (4, 3), (4, 4)])
        assert mc_score(truth, p, 4) == 0.0  # only index 1 counts, matched exactly


class TestDatasetMeanScores:
    def test_two_level_average(self):
        from tsalign import dataset_mean_scores
        means, overall = dataset_mean_scores([[0.1, 0.3], [0.2], [0.4, 0.6, 0.8]])
        assert np.allclose(means, [0.2, 0.2, 0.6])
        assert overall == pytest.approx(1.0 / 3.0)

    def test_differs_from_pooled_mean_for_uneven_datasets(self):
        from tsalign import dataset_mean_scores
        scores = [[0.0, 0.0, 0.0, 0.0], [1.0]]
        _, overall = dataset_mean_scores(scores)
        pooled = np.mean(np.concatenate([np.asarray(s) for s in scores]))
        assert overall == 0.5
        assert pooled == pytest.approx(0.2)

    def test_empty_rejected(self):
        from tsalign import dataset_mean_scores
        with pytest.raises(ValueError):
            dataset_mean_scores([])


class TestZNormalize:
    def test_hand_example(self):
        out = z_normalize([1.0, 2.0, 3.0])
        root = np.sqrt(3.0 / 2.0)
        assert np.allclose(out, [-root, 0.0, root])

    def test_idempotent_on_normalized_input(self, rng):
        s = z_normalize(rng.normal(size=50))
        assert np.allclose(z_normalize(s), s, atol=1e-12)

    def test_constant_maps_to_zeros_with_warning(self):
        with pytest.warns(UserWarning):
            out = z_normalize([4.0, 4.0, 4.0])
        assert np.array_equal(out, np.zeros(3))


def two_class_dataset(rng, per_class=6, n=30, noise=0.05):
    x = np.linspace(0, 1, n)
    rows, labels = [], []
    for _ in range(per_class):
        rows.append(np.sin(2 * np.pi * x) + noise * rng.normal(size=n))
        labels.append("sine")
        rows.append(np.sign(np.sin(2 * np.pi * x)) + noise * rng.normal(size=n))
        labels.append("square")
    return LabeledDataset(np.array(rows), np.array(labels, dtype=object))


class TestOneNn:
    def test_duplicates_classify_exactly(self, rng):
        train = two_class_dataset(rng)
        test = LabeledDataset(train.series[:4].copy(), train.labels[:4].copy())
        cfg = MethodConfig(w_q=6)
        assert one_nn(train, test, MethodKind.DTW, cfg) == 0.0

    def test_separable_classes(self, rng):
        train = two_class_dataset(rng)
        test = two_class_dataset(rng)
        assert one_nn(train, test, MethodKind.DTW, MethodConfig(w_q=6)) == 0.0

    def test_single_class(self, rng):
        ds = LabeledDataset(rng.normal(size=(4, 20)), np.array(["a"] * 4, dtype=object))
        assert one_nn(ds, ds, MethodKind.DTW, MethodConfig(w_q=4)) == 0.0

    def test_empty_training_set_rejected(self, rng):
        from tsalign import DataError
        ds = LabeledDataset(rng.normal(size=(2, 10)), np.array(["a", "b"], dtype=object))
        with pytest.raises(DataError):
            ds.subset(np.array([], dtype=int))  # an empty dataset is unrepresentable

    def test_tie_goes_to_first_training_item(self, rng):
        row = rng.normal(size=12)
        train = LabeledDataset(np.vstack([row, row]), np.array(["first", "second"], dtype=object))
        test = LabeledDataset(row[None, :], np.array(["first"], dtype=object))
        pred, idx = nn_predict(train, test, MethodKind.DTW, MethodConfig(w_q=3))
        assert pred[0] == "first" and idx[0] == 0

    def test_invariant_to_training_order_without_ties(self, rng):
        train = two_class_dataset(rng)
        test = two_class_dataset(rng)
        cfg = MethodConfig(w_q=6)
        pred_a, _ = nn_predict(train, test, MethodKind.DTW, cfg)
        perm = rng.permutation(len(train))
        pred_b, _ = nn_predict(train.subset(perm), test, MethodKind.DTW, cfg)
        assert np.array_equal(pred_a, pred_b)

    def test_parallel_matches_serial(self, rng):
        train = two_class_dataset(rng, per_class=3)
        test = two_class_dataset(rng, per_class=3)
        cfg = MethodConfig(w_q=6, w_h=2)
        serial, _ = nn_predict(train, test, MethodKind.RDTW, cfg, jobs=1)
        parallel, _ = nn_predict(train, test, MethodKind.RDTW, cfg, jobs=4)
        assert np.array_equal(serial, parallel)

    def test_znorm_method_ignores_scaling(self, rng):
        base = np.sin(np.linspace(0, 2 * np.pi, 24))
        train = LabeledDataset(np.vstack([base, -base]), np.array(["pos", "neg"], dtype=object))
        test = LabeledDataset((5.0 * base + 3.0)[None, :], np.array(["pos"], dtype=object))
        assert one_nn(train, test, MethodKind.DTW_ZNORM, MethodConfig(w_q=5)) == 0.0

    def test_region_methods_require_width(self, rng):
        ds = two_class_dataset(rng, per_class=2)
        with pytest.raises(ConfigError):
            one_nn(ds, ds, MethodKind.RDTW, MethodConfig(w_q=5, w_h=None))


class TestComputeMeasure:
    @pytest.mark.parametrize("method", list(MethodKind))
    def test_all_methods_dispatch(self, rng, method):
        from tsalign import compute_measure
        s, t = rng.normal(size=20), rng.normal(size=20)
        cfg = MethodConfig(w_q=5, w_h=2)
        value = compute_measure(method, s, t, cfg)
        assert np.isfinite(value) and value >= 0.0

    def test_scaling_only_separates_methods(self, rng):
        from tsalign import compute_measure
        t = np.sin(np.linspace(0, 6.3, 30))
        s = 4.0 * t
        cfg = MethodConfig(w_q=6, w_h=2)
        plain = compute_measure(MethodKind.DTW, s, t, cfg)
        for affine_kind in (MethodKind.ADTW, MethodKind.GARDTW,
                            MethodKind.LARDTW, MethodKind.DTW_ZNORM):
            assert compute_measure(affine_kind, s, t, cfg) < plain


class TestTuneParams:
    def test_single_grid_point_returned(self, rng):
        ds = two_class_dataset(rng, per_class=4)
        grid = TuningGrid(wq_ratios=(0.1,), wh_ratios=(0.2,))
        res = tune_params(ds, MethodKind.RDTW, grid, seed=1)
        assert (res.w_q, res.w_h) == (3, 6)

    def test_deterministic_for_fixed_seed(self, rng):
        ds = two_class_dataset(rng, per_class=4, noise=0.4)
        grid = TuningGrid(wq_ratios=(0.0, 0.1, 0.2), wh_ratios=(0.05, 0.25))
        a = tune_params(ds, MethodKind.RDTW, grid, seed=9)
        b = tune_params(ds, MethodKind.RDTW, grid, seed=9)
        assert a == b

    def test_methods_without_region_have_no_width(self, rng):
        ds = two_class_dataset(rng, per_class=4)
        res = tune_params(ds, MethodKind.DTW, TuningGrid(wq_ratios=(0.0, 0.1)), seed=2)
        assert res.w_h is None

    def test_singleton_class_warns(self, rng):
        series = rng.normal(size=(5, 16))
        labels = np.array(["a", "a", "a", "a", "lone"], dtype=object)
        ds = LabeledDataset(series, labels)
        with pytest.warns(UserWarning):
            tune_params(ds, MethodKind.DTW, TuningGrid(wq_ratios=(0.1,)), seed=0)

    def test_selected_region_tracks_discriminative_length(self):
        # Two classes differ only in a local bump of length 12; a
        # class-independent confounder and per-point noise make both very
        # small and very large regions unattractive.  The tuned half-width
        # should land within a factor 2 of 12/2 = 6 in most seeded runs.
        n, bump_len = 60, 12

        def bump_at(center, half, amp, n):
            out = np.zeros(n)
            idx = np.arange(max(0, center - half), min(n, center + half + 1))
            out[idx] = amp * (1.0 - np.abs(idx - center) / half)
            return out

        def make_dataset(seed):
            r = np.random.default_rng(seed)
            rows, labels = [], []
            for label, amp in (("up", 1.0), ("down", -1.0)):
                for _ in range(10):
                    center = int(r.integers(24, 37))
                    series = bump_at(center, bump_len // 2, amp, n)
                    conf = int(r.integers(6, 15)) if r.random() < 0.5 else int(r.integers(46, 55))
                    series += bump_at(conf, 9, r.uniform(0.5, 2.0), n)
                    series += 0.18 * r.normal(size=n)
                    rows.append(series)
                    labels.append(label)
            return LabeledDataset(np.array(rows), np.array(labels, dtype=object))

        grid = TuningGrid(wq_ratios=(0.2,))
        hits = 0
        for seed in range(20):
            res = tune_params(make_dataset(seed), MethodKind.RDTW, grid, seed=seed)
            if bump_len // 4 <= res.w_h <= bump_len:
                hits += 1
        assert hits >= 12  # >= 60% of 20 runs


class TestWinLoss:
    def test_reference_fixture(self):
        errors_a = [0.0] * 25 + [0.5] * 8 + [1.0] * 10
        errors_b = [0.1] * 25 + [0.5] * 8 + [0.9] * 10
        res = win_loss(errors_a, errors_b)
        assert (res.wins, res.ties, res.losses) == (25, 8, 10)
        assert res.ratio == pytest.approx(29.0 / 14.0)
        assert f"{res.ratio:.1f}" == "2.1"

    def test_identical_lists_tie(self):
        res = win_loss([0.1, 0.2], [0.1, 0.2])
        assert res == (1.0, 0, 2, 0)

    def test_strictly_better_gives_infinity(self):
        res = win_loss([0.0, 0.0], [0.1, 0.2])
        assert res.ratio == np.inf and res.losses == 0

    def test_length_mismatch_rejected(self):
        with pytest.raises(ValueError):
            win_loss([0.1], [0.1, 0.2])


class TestAverageRanks:
    def test_dominating_method(self):
        errors = np.array([[0.1, 0.2, 0.1], [0.3, 0.4, 0.2]])
        assert np.array_equal(average_ranks(errors), [1.0, 2.0])

    def test_all_equal(self):
        errors = np.full((4, 3), 0.25)
        assert np.array_equal(average_ranks(errors), [2.5] * 4)

    def test_mean_rank_ties(self):
        errors = np.array([[0.1], [0.1], [0.3]])
        assert np.array_equal(average_ranks(errors), [1.5, 1.5, 3.0])

    def test_ranks_sum_invariant(self, rng):
        k, d = 5, 7
        errors = rng.random((k, d))
        ranks = np.array([average_ranks(errors[:, [j]]) for j in range(d)])
        assert np.allclose(ranks.sum(axis=1), k * (k + 1) / 2)

    def test_critical_difference_flags(self):
        flags = exceeds_critical_difference([1.0, 3.0, 4.0], critical_difference=2.356)
        assert not flags[0, 1] and flags[0, 2] and not flags[1, 2]
        assert not flags.diagonal().any()
