"""
Tests for the spectral package
Reference and fast DQFT paths against a double-loop oracle, inversion, Parseval and analysis helpers
"""

import math

import numpy as np
import pytest

from algebra import DualQuaternion, Quaternion, dq_mul, dq_mul_array
from conftest import brute_force_dqft, random_unit_signal
from exceptions import InvalidArgumentError, SideMismatchError
from spectral import (
    DQSignal,
    DQSpectrum,
    KernelCache,
    TransformAxis,
    TransformSide,
    dominant_bins,
    dqft,
    dqft_fast,
    dqft_left,
    dqft_right,
    idqft,
    idqft_fast,
    idqft_left,
    idqft_right,
    kernel,
    perpendicular_basis,
    spectral_similarity,
    wrap_distance,
)

SIDES = [TransformSide.RIGHT, TransformSide.LEFT]
SIZES = [1, 2, 3, 8, 64, 257]
AXES = [
    TransformAxis.default(),
    TransformAxis.from_vector((1.0, 0.0, 0.0)),
    TransformAxis.from_vector((0.2, -0.7, 0.4)),
]


def max_diff(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.max(np.abs(a - b)))


class TestTransformAxis:
    def test_default_is_normalized_diagonal(self):
        assert np.allclose(TransformAxis.default().vector, np.ones(3) / math.sqrt(3.0))

    def test_rejects_non_pure_and_non_unit(self):
        with pytest.raises(InvalidArgumentError):
            TransformAxis(Quaternion(1.0, 0.0, 0.0, 0.0))
        with pytest.raises(InvalidArgumentError):
            TransformAxis(Quaternion.pure(2.0, 0.0, 0.0))
        with pytest.raises(InvalidArgumentError):
            TransformAxis.from_vector((0.0, 0.0, 0.0))

    def test_perpendicular_basis_is_orthonormal(self):
        for axis in AXES:
            mu2, mu3 = perpendicular_basis(axis)
            frame = np.stack([axis.vector, mu2, mu3])
            assert np.allclose(frame @ frame.T, np.eye(3), atol=1e-15)
            assert np.linalg.det(frame) == pytest.approx(1.0)


class TestKernel:
    def test_examples(self):
        mu = TransformAxis.from_vector((1.0, 0.0, 0.0))
        assert kernel(mu, 0.0) == DualQuaternion.identity()
        assert np.allclose(kernel(mu, math.pi / 2).as_array(), [0, -1, 0, 0, 0, 0, 0, 0], atol=1e-15)

    def test_same_axis_kernels_compose(self):
        axis = TransformAxis.default()
        product = dq_mul(kernel(axis, 0.4), kernel(axis, 1.1)).as_array()
        assert max_diff(product, kernel(axis, 1.5).as_array()) <= 1e-15

    def test_orthogonality(self):
        axis = TransformAxis.default()
        length = 8
        for x in range(length):
            for y in range(length):
                total = sum(kernel(axis, 2 * math.pi * (x - y) * t / length).as_array() for t in range(length))
                expected = DualQuaternion.identity().as_array() * length if x == y else np.zeros(8)
                assert max_diff(total, expected) <= 1e-10


class TestSignals:
    def test_empty_signal_rejected(self):
        with pytest.raises(InvalidArgumentError):
            DQSignal(np.zeros((0, 8)))

    def test_non_finite_rejected(self):
        values = np.zeros((3, 8))
        values[1, 2] = np.nan
        with pytest.raises(InvalidArgumentError):
            DQSignal(values)

    def test_samples_are_read_only(self, random_signal):
        f = random_signal(4)
        with pytest.raises(ValueError):
            f.samples[0, 0] = 1.0


class TestReferenceTransform:
    @pytest.mark.parametrize("side", SIDES)
    def test_constant_signal(self, rng, side):
        c = rng.normal(size=8)
        spectrum = dqft(DQSignal(np.tile(c, (4, 1))), side=side)
        assert max_diff(spectrum.coefficients[0], 2.0 * c) <= 1e-12
        assert max_diff(spectrum.coefficients[1:], np.zeros((3, 8))) <= 1e-12
        assert spectrum.side == side

    @pytest.mark.parametrize("side", SIDES)
    def test_impulse(self, rng, side):
        delta = rng.normal(size=8)
        values = np.zeros((5, 8))
        values[0] = delta
        spectrum = dqft(DQSignal(values), side=side)
        assert max_diff(spectrum.coefficients, np.tile(delta / math.sqrt(5.0), (5, 1))) <= 1e-15

    def test_scalar_signal_has_equal_sides(self, rng):
        values = np.zeros((16, 8))
        values[:, 0] = rng.normal(size=16)
        values[:, 4] = rng.normal(size=16)
        f = DQSignal(values)
        assert max_diff(dqft_left(f).coefficients, dqft_right(f).coefficients) <= 1e-12

    def test_random_signal_sides_differ(self, random_signal):
        f = random_signal(8)
        assert max_diff(dqft_left(f).coefficients, dqft_right(f).coefficients) > 1e-3

    @pytest.mark.parametrize("side", SIDES)
    def test_inverse_of_dc_only_spectrum(self, rng, side):
        c = rng.normal(size=8)
        coefficients = np.zeros((4, 8))
        coefficients[0] = c
        f = idqft(DQSpectrum(coefficients, side, TransformAxis.default()))
        assert max_diff(f.samples, np.tile(c / 2.0, (4, 1))) <= 1e-15

    @pytest.mark.parametrize("length", SIZES)
    @pytest.mark.parametrize("side", SIDES)
    def test_matches_brute_force(self, random_signal, length, side):
        f = random_signal(length)
        axis = TransformAxis.default()
        forward = brute_force_dqft(f.samples, axis.vector, side.value)
        assert max_diff(dqft(f, axis, side).coefficients, forward) <= 1e-9
        assert max_diff(dqft_fast(f, axis, side).coefficients, forward) <= 1e-9

        spectrum = DQSpectrum(f.samples, side, axis)
        backward = brute_force_dqft(f.samples, axis.vector, side.value, inverse=True)
        assert max_diff(idqft(spectrum).samples, backward) <= 1e-9
        assert max_diff(idqft_fast(spectrum).samples, backward) <= 1e-9

    @pytest.mark.parametrize("length", SIZES)
    @pytest.mark.parametrize("side", SIDES)
    def test_inversion(self, rng, length, side):
        for trial in range(100):
            f = random_unit_signal(rng, length)
            axis = AXES[trial % len(AXES)]
            restored = idqft(dqft(f, axis, side))
            assert max_diff(restored.samples, f.samples) <= 1e-10

    def test_side_specific_inverses(self, random_signal):
        f = random_signal(8)
        assert max_diff(idqft_right(dqft_right(f)).samples, f.samples) <= 1e-10
        assert max_diff(idqft_left(dqft_left(f)).samples, f.samples) <= 1e-10
        with pytest.raises(SideMismatchError):
            idqft_right(dqft_left(f))
        with pytest.raises(SideMismatchError):
            idqft_left(dqft_right(f))

    @pytest.mark.parametrize("side", SIDES)
    def test_linearity(self, random_signal, side):
        f, g = random_signal(12), random_signal(12)
        combined = DQSignal(2.5 * f.samples - 0.75 * g.samples)
        expected = 2.5 * dqft(f, side=side).coefficients - 0.75 * dqft(g, side=side).coefficients
        assert max_diff(dqft(combined, side=side).coefficients, expected) <= 1e-10

    @pytest.mark.parametrize("side", SIDES)
    @pytest.mark.parametrize("length", [1, 7, 256, 1024])
    def test_parseval(self, random_signal, side, length):
        f = random_signal(length)
        for spectrum in (dqft(f, side=side), dqft_fast(f, side=side)):
            assert spectrum.energy() == pytest.approx(f.energy(), rel=1e-8)

    @pytest.mark.parametrize("side", SIDES)
    def test_shift_modulation(self, rng, side):
        axis = TransformAxis.default()
        for _ in range(100):
            length = int(rng.integers(2, 24))
            shift = int(rng.integers(0, length))
            f = DQSignal(rng.normal(size=(length, 8)))
            shifted = DQSignal(np.roll(f.samples, shift, axis=0))
            kernels = np.stack([kernel(axis, 2 * math.pi * shift * t / length).as_array() for t in range(length)])
            spectrum = dqft(f, axis, side).coefficients
            if side == TransformSide.RIGHT:
                expected = dq_mul_array(spectrum, kernels)
            else:
                expected = dq_mul_array(kernels, spectrum)
            assert max_diff(dqft(shifted, axis, side).coefficients, expected) <= 1e-9

    def test_zero_dual_parts_stay_zero(self, rng):
        values = np.zeros((9, 8))
        values[:, :4] = rng.normal(size=(9, 4))
        for side in SIDES:
            assert np.all(dqft(DQSignal(values), side=side).coefficients[:, 4:] == 0.0)

    def test_worker_count_does_not_change_result(self, random_signal):
        f = random_signal(97)
        single = dqft(f, workers=1).coefficients
        for workers in (2, 3, 8):
            assert np.array_equal(dqft(f, workers=workers).coefficients, single)


class TestFastTransform:
    @pytest.mark.parametrize("length", [8, 64, 256])
    @pytest.mark.parametrize("side", SIDES)
    def test_matches_reference(self, random_signal, length, side):
        for trial in range(100):
            f = random_signal(length)
            axis = AXES[trial % len(AXES)]
            reference = dqft(f, axis, side).coefficients
            assert max_diff(dqft_fast(f, axis, side).coefficients, reference) <= 1e-9

    def test_constant_signal(self, rng):
        c = rng.normal(size=8)
        spectrum = dqft_fast(DQSignal(np.tile(c, (4, 1))))
        assert max_diff(spectrum.coefficients[0], 2.0 * c) <= 1e-12
        assert max_diff(spectrum.coefficients[1:], np.zeros((3, 8))) <= 1e-12

    @pytest.mark.parametrize("side", SIDES)
    def test_inversion(self, rng, side):
        f = random_unit_signal(rng, 1000)
        assert max_diff(idqft_fast(dqft_fast(f, side=side)).samples, f.samples) <= 1e-10


class TestKernelCache:
    def test_hits_misses_and_eviction(self):
        cache = KernelCache(max_entries=2)
        cos4, sin4 = cache.get_tables(4)
        assert np.allclose(cos4, [1.0, 0.0, -1.0, 0.0], atol=1e-15)
        assert np.allclose(sin4, [0.0, 1.0, 0.0, -1.0], atol=1e-15)
        cache.get_tables(4)
        cache.get_tables(8)
        cache.get_tables(16)
        stats = cache.get_stats()
        assert stats['hits'] == 1 and stats['misses'] == 3
        assert stats['cached_lengths'] == [8, 16]
        cache.clear()
        assert cache.get_stats()['entries'] == 0


class TestAnalysis:
    def test_wrap_distance(self):
        assert wrap_distance(8).tolist() == [0, 1, 2, 3, 4, 3, 2, 1]
        assert wrap_distance(1).tolist() == [0]

    def test_dominant_bins_pool_mirrored_bins(self):
        length = 32
        n = np.arange(length)
        values = np.zeros((length, 8))
        values[:, 1] = np.sin(2 * np.pi * 3 * n / length)
        values[:, 5] = 0.1 * np.sin(2 * np.pi * 7 * n / length)
        top = dominant_bins(dqft(DQSignal(values)), count=2)
        assert [d for d, _ in top] == [3, 7]
        assert top[0][1] > top[1][1]

    def test_spectral_similarity(self, random_signal):
        f, g = random_signal(16), random_signal(16)
        assert spectral_similarity(dqft(f), dqft(f)) == pytest.approx(1.0)
        assert 0.0 <= spectral_similarity(dqft(f), dqft(g)) <= 1.0
        zero = dqft(DQSignal(np.zeros((16, 8))))
        assert spectral_similarity(zero, dqft(f)) == 0.0
        with pytest.raises(InvalidArgumentError):
            spectral_similarity(dqft(f), dqft(random_signal(8)))
