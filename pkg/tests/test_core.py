"""Tests for the shared domain types: kernel bank, datasets, fitted params."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from convpool.core import (
    KERNEL_LENGTH,
    MIN_SERIES_LENGTH,
    NUM_KERNELS,
    POOLING_OPS,
    REPRESENTATIONS,
    Dataset,
    Kernel,
    KernelBank,
    RepresentationParams,
    as_series,
    enumerate_kernels,
)

from conftest import make_dataset


class TestKernelBank:
    def test_exactly_84_kernels(self):
        bank = enumerate_kernels()
        assert len(bank) == NUM_KERNELS == 84

    def test_every_kernel_has_six_low_three_high(self):
        for k in enumerate_kernels():
            assert len(k.weights) == KERNEL_LENGTH
            assert sorted(k.weights) == [-1.0] * 6 + [2.0] * 3

    def test_all_kernels_distinct(self):
        seen = {k.weights for k in enumerate_kernels()}
        assert len(seen) == 84

    def test_kernels_sum_to_zero(self):
        # six * -1 + three * 2 = 0, so the response to a constant series is 0
        for k in enumerate_kernels():
            assert sum(k.weights) == 0.0

    def test_lexicographic_order_of_high_positions(self):
        triples = [k.high_positions for k in enumerate_kernels()]
        assert triples == sorted(triples)
        assert triples[0] == (0, 1, 2)
        assert triples[-1] == (6, 7, 8)

    def test_weight_matrix_shape_and_content(self):
        bank = enumerate_kernels()
        w = bank.weight_matrix()
        assert w.shape == (84, 9)
        assert w.dtype == np.float64
        np.testing.assert_array_equal(w[0], [2, 2, 2, -1, -1, -1, -1, -1, -1])
        np.testing.assert_array_equal(w[-1], [-1, -1, -1, -1, -1, -1, 2, 2, 2])

    def test_kernel_rejects_wrong_multiset(self):
        with pytest.raises(ValueError):
            Kernel(weights=(2.0,) * 9)
        with pytest.raises(ValueError):
            Kernel(weights=(-1.0,) * 6 + (2.0, 2.0, 1.0))
        with pytest.raises(ValueError):
            Kernel(weights=(-1.0, 2.0))

    def test_bank_rejects_duplicates(self):
        ks = list(enumerate_kernels().kernels)
        ks[1] = ks[0]
        with pytest.raises(ValueError):
            KernelBank(kernels=tuple(ks))


class TestAsSeries:
    def test_roundtrips_and_is_readonly(self):
        x = as_series([1, 2, 3])
        np.testing.assert_array_equal(x, [1.0, 2.0, 3.0])
        assert x.dtype == np.float64
        with pytest.raises(ValueError):
            x[0] = 5.0

    def test_rejects_short_and_bad_values(self):
        with pytest.raises(ValueError):
            as_series([1.0])
        with pytest.raises(ValueError):
            as_series([[1.0, 2.0]])
        with pytest.raises(ValueError):
            as_series([1.0, np.nan, 3.0])
        with pytest.raises(ValueError):
            as_series([1.0, np.inf])

    def test_minimum_length_is_two(self):
        assert as_series([0.0, 1.0]).shape == (MIN_SERIES_LENGTH,)


class TestDataset:
    def test_valid_construction(self, small_dataset):
        d = small_dataset
        assert d.num_examples == 12
        assert d.length == 64
        assert d.num_classes == 2
        assert d.class_counts().tolist() == [6, 6]
        assert not d.values.flags.writeable
        assert not d.labels.flags.writeable

    def test_rejects_label_mismatch(self):
        with pytest.raises(ValueError):
            Dataset(
                name="x",
                values=np.zeros((3, 8)),
                labels=np.array([0, 1]),
                label_names=("a", "b"),
            )

    def test_rejects_missing_class(self):
        with pytest.raises(ValueError, match="no examples"):
            Dataset(
                name="x",
                values=np.zeros((2, 8)),
                labels=np.array([0, 0]),
                label_names=("a", "b"),
            )

    def test_rejects_out_of_range_labels(self):
        with pytest.raises(ValueError):
            Dataset(
                name="x",
                values=np.zeros((2, 8)),
                labels=np.array([0, 2]),
                label_names=("a", "b"),
            )

    def test_rejects_non_finite(self):
        vals = np.zeros((2, 8))
        vals[1, 3] = np.nan
        with pytest.raises(ValueError, match="series 1 at position 3"):
            Dataset(
                name="x",
                values=vals,
                labels=np.array([0, 1]),
                label_names=("a", "b"),
            )

    def test_defensive_copy(self):
        vals = np.zeros((2, 8))
        d = Dataset(name="x", values=vals, labels=np.array([0, 1]), label_names=("a", "b"))
        vals[0, 0] = 99.0
        assert d.values[0, 0] == 0.0


class TestRepresentationParams:
    def _make(self, total=6):
        dilations = np.array([1, 2, 4])
        combos = np.array([2, 2, total - 4])
        return RepresentationParams(
            tag="base",
            dilations=dilations,
            combos_per_dilation=combos,
            biases=np.zeros((NUM_KERNELS, total)),
            paddings=np.arange(total) % 2 == 0,
        )

    def test_valid(self):
        p = self._make()
        assert p.combos_per_kernel == 6
        assert p.num_combos == 84 * 6
        assert p.paddings[0] and not p.paddings[1]

    def test_rejects_unknown_tag(self):
        with pytest.raises(ValueError):
            RepresentationParams(
                tag="third_diff",
                dilations=np.array([1]),
                combos_per_dilation=np.array([1]),
                biases=np.zeros((NUM_KERNELS, 1)),
                paddings=np.array([True]),
            )

    def test_rejects_non_increasing_dilations(self):
        with pytest.raises(ValueError):
            RepresentationParams(
                tag="base",
                dilations=np.array([1, 1]),
                combos_per_dilation=np.array([1, 1]),
                biases=np.zeros((NUM_KERNELS, 2)),
                paddings=np.array([True, False]),
            )

    def test_rejects_wrong_padding_pattern(self):
        with pytest.raises(ValueError, match="paddings"):
            RepresentationParams(
                tag="base",
                dilations=np.array([1]),
                combos_per_dilation=np.array([2]),
                biases=np.zeros((NUM_KERNELS, 2)),
                paddings=np.array([False, True]),
            )

    def test_rejects_bias_shape_mismatch(self):
        with pytest.raises(ValueError):
            RepresentationParams(
                tag="base",
                dilations=np.array([1]),
                combos_per_dilation=np.array([2]),
                biases=np.zeros((NUM_KERNELS, 3)),
                paddings=np.array([True, False]),
            )


class TestConstants:
    def test_canonical_orders(self):
        assert REPRESENTATIONS == ("base", "first_diff")
        assert POOLING_OPS == ("ppv", "mpv", "mipv", "lspv")


@given(st.integers(min_value=2, max_value=200), st.integers(min_value=2, max_value=5))
def test_dataset_accepts_any_valid_shape(length, num_classes):
    d = make_dataset(num_examples=2 * num_classes, length=length, num_classes=num_classes)
    assert d.length == length
    assert d.num_classes == num_classes
    assert (d.class_counts() > 0).all()
