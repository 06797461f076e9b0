"""Regional costs: direct definition, rolling-update tables, RDTW."""

import numpy as np
import pytest

from tsalign import (
    BandConfig,
    ConfigError,
    dtw,
    rdtw,
    regional_cost_direct,
    regional_cost_table,
    validate_path,
)

from oracles import min_path_cost


def regional_matrix(s, t, w_h):
    n, m = len(s), len(t)
    return np.array([[regional_cost_direct(s, t, a, b, w_h).cost
                      for b in range(1, m + 1)] for a in range(1, n + 1)])


class TestRegionalCostDirect:
    def test_identical_windows_cost_zero(self, rng):
        s = rng.normal(size=10)
        for w_h in (0, 1, 3):
            assert regional_cost_direct(s, s, 4, 4, w_h).cost == 0.0

    def test_hand_example_full_window(self):
        cost, count = regional_cost_direct([0.0, 2.0, 4.0], [1.0, 1.0, 1.0], 2, 2, 1)
        assert count == 3
        assert cost == pytest.approx(11.0 / 3.0)

    def test_hand_example_truncated_window(self):
        cost, count = regional_cost_direct([0.0, 1.0, 0.0], [1.0, 0.0, 1.0], 1, 2, 1)
        assert count == 2
        assert cost == 0.0

    def test_count_is_at_least_one(self):
        assert regional_cost_direct([1.0], [2.0], 1, 1, 5).count == 1

    def test_bounded_by_constituent_distances(self, rng):
        s, t = rng.normal(size=20), rng.normal(size=20)
        for _ in range(50):
            a, b = rng.integers(1, 21, 2)
            w_h = int(rng.integers(0, 6))
            lo = max(-w_h, 1 - a, 1 - b)
            hi = min(w_h, 20 - a, 20 - b)
            pieces = [(s[a - 1 + w] - t[b - 1 + w]) ** 2 for w in range(lo, hi + 1)]
            cost, _ = regional_cost_direct(s, t, int(a), int(b), w_h)
            assert min(pieces) - 1e-12 <= cost <= max(pieces) + 1e-12

    def test_rejects_negative_width_and_bad_cell(self):
        with pytest.raises(ConfigError):
            regional_cost_direct([1.0], [1.0], 1, 1, -1)
        with pytest.raises(IndexError):
            regional_cost_direct([1.0], [1.0], 2, 1, 0)


class TestRegionalCostTable:
    def test_width_zero_equals_pointwise(self, rng):
        s, t = rng.normal(size=15), rng.normal(size=15)
        table = regional_cost_table(s, t, BandConfig(4), 0)
        for a in range(1, 16):
            for b in range(1, 16):
                if table.in_band(a, b):
                    assert table.value(a, b) == (s[a - 1] - t[b - 1]) ** 2

    @pytest.mark.parametrize("w_h", [0, 1, 5, 10])
    def test_rolling_matches_direct(self, rng, w_h):
        s, t = rng.normal(size=60), rng.normal(size=60)
        table = regional_cost_table(s, t, BandConfig(20), w_h)
        for a in range(1, 61):
            for b in range(1, 61):
                if table.in_band(a, b):
                    expected = regional_cost_direct(s, t, a, b, w_h).cost
                    assert table.value(a, b) == pytest.approx(expected, rel=1e-9, abs=1e-12)

    def test_rolling_matches_direct_unequal_lengths(self, rng):
        s, t = rng.normal(size=23), rng.normal(size=37)
        table = regional_cost_table(s, t, BandConfig(6), 3)
        for a in range(1, 24):
            for b in range(1, 38):
                if table.in_band(a, b):
                    expected = regional_cost_direct(s, t, a, b, 3).cost
                    assert table.value(a, b) == pytest.approx(expected, rel=1e-9, abs=1e-12)

    def test_constant_identical_series(self):
        s = np.full(12, 3.7)
        table = regional_cost_table(s, s, BandConfig(3), 2)
        assert np.all(table.band[np.isfinite(table.band)] == 0.0)


class TestRdtw:
    def test_width_zero_reduces_to_dtw_exactly(self):
        for seed in range(20):
            r = np.random.default_rng(seed)
            s, t = r.normal(size=50), r.normal(size=50)
            d = dtw(s, t, BandConfig(10))
            g = rdtw(s, t, BandConfig(10), 0)
            assert g.measure == d.measure
            assert np.array_equal(g.path.pairs, d.path.pairs)

    def test_self_alignment_zero(self, rng):
        s = rng.normal(size=25)
        for w_h in (1, 4, 9):
            path, measure = rdtw(s, s, BandConfig(5), w_h)
            assert measure == 0.0
            assert np.array_equal(path.pairs, np.column_stack([np.arange(1, 26)] * 2))

    def test_matches_enumeration(self, rng):
        for _ in range(20):
            n, m = rng.integers(2, 8, 2)
            s, t = rng.normal(size=n), rng.normal(size=m)
            path, measure = rdtw(s, t, BandConfig.full(), 1)
            expected = min_path_cost(regional_matrix(s, t, 1))
            assert measure == pytest.approx(expected, rel=1e-12, abs=1e-12)
            assert validate_path(path, n, m)

    def test_large_window_still_works(self, rng):
        s, t = rng.normal(size=12), rng.normal(size=12)
        path, measure = rdtw(s, t, BandConfig.full(), 40)
        assert np.isfinite(measure)
        assert validate_path(path, 12, 12)
