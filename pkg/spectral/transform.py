"""
Discrete Dual-Quaternion Fourier Transform (reference path)
Right/left forward and inverse transforms evaluated as the direct O(M²) sums
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Optional

import numpy as np

from algebra import DualQuaternion, Quaternion, q_mul_array
from exceptions import SideMismatchError
from .kernel_cache import kernel_cache
from .signals import DQSignal, DQSpectrum, TransformAxis, TransformSide

logger = logging.getLogger(__name__)


def kernel(axis: TransformAxis, angle: float) -> DualQuaternion:
    """e^{-μ·angle} = cos(angle) - sin(angle)·μ, embedded with a zero dual part"""
    c, s = math.cos(angle), math.sin(angle)
    mu = axis.mu
    return DualQuaternion(Quaternion(c, -s * mu.x, -s * mu.y, -s * mu.z), Quaternion())


def _times_axis(values: np.ndarray, mu: np.ndarray, side: TransformSide) -> np.ndarray:
    """f·μ (right) or μ·f (left) applied to both quaternion parts of an (M, 8) array"""
    parts = []
    for part in (values[:, :4], values[:, 4:]):
        parts.append(q_mul_array(part, mu) if side == TransformSide.RIGHT else q_mul_array(mu, part))
    return np.concatenate(parts, axis=1)


def _direct_sum(values: np.ndarray, axis: TransformAxis, side: TransformSide, sign: float,
                workers: int = 1) -> np.ndarray:
    """
    Evaluate out(t) = (1/√M) Σ_x values(x) ⊗ e^{sign·μ2πxt/M} for every bin t

    Args:
        values: (M, 8) input coefficients
        axis: Transform axis μ
        side: Kernel multiplied on the right or on the left
        sign: -1 for the forward transform, +1 for the inverse
        workers: Threads evaluating contiguous chunks of bins

    Returns:
        (M, 8) array of output coefficients
    """
    length = values.shape[0]
    cos_table, sin_table = kernel_cache.get_tables(length)
    # (c + sign·s·μ) multiplies f as c·f + sign·s·(f μ)
    rotated = _times_axis(values, axis.as_array(), side)
    x = np.arange(length, dtype=np.int64)
    scale = 1.0 / math.sqrt(length)
    out = np.empty_like(values)

    def evaluate(bins: range) -> None:
        for t in bins:
            index = (x * t) % length
            terms = cos_table[index, None] * values + (sign * sin_table[index])[:, None] * rotated
            out[t] = np.add.reduce(terms, axis=0) * scale

    workers = max(1, min(int(workers), length))
    if workers == 1:
        evaluate(range(length))
    else:
        # Every bin is reduced on its own, so the chunking never changes the result
        bounds = np.linspace(0, length, workers + 1).astype(int)
        chunks = [range(bounds[i], bounds[i + 1]) for i in range(workers)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(evaluate, chunks))
    return out


def dqft(f: DQSignal, axis: Optional[TransformAxis] = None, side: TransformSide = TransformSide.RIGHT,
         workers: int = 1) -> DQSpectrum:
    """
    Forward DQFT on the reference path

    Args:
        f: Input signal
        axis: Transform axis (default (i + j + k)/√3)
        side: Which side the kernel multiplies
        workers: Threads used across output bins

    Returns:
        Spectrum tagged with side and axis
    """
    axis = axis or TransformAxis.default()
    side = TransformSide(side)
    logger.debug(f"DQFT {side.value} M={len(f)} workers={workers}")
    coefficients = _direct_sum(f.samples, axis, side, -1.0, workers)
    return DQSpectrum(coefficients, side, axis, f.sample_rate)


def dqft_right(f: DQSignal, axis: Optional[TransformAxis] = None, workers: int = 1) -> DQSpectrum:
    """F(t) = (1/√M) Σ_x f(x)·e^{-μ2πxt/M}"""
    return dqft(f, axis, TransformSide.RIGHT, workers)


def dqft_left(f: DQSignal, axis: Optional[TransformAxis] = None, workers: int = 1) -> DQSpectrum:
    """F(t) = (1/√M) Σ_x e^{-μ2πxt/M}·f(x)"""
    return dqft(f, axis, TransformSide.LEFT, workers)


def idqft(spectrum: DQSpectrum, workers: int = 1) -> DQSignal:
    """Inverse DQFT on the side the spectrum was produced on"""
    logger.debug(f"IDQFT {spectrum.side.value} M={len(spectrum)} workers={workers}")
    samples = _direct_sum(spectrum.coefficients, spectrum.axis, spectrum.side, 1.0, workers)
    return DQSignal(samples, spectrum.sample_rate)


def idqft_right(spectrum: DQSpectrum, workers: int = 1) -> DQSignal:
    """f(x) = (1/√M) Σ_t F(t)·e^{+μ2πxt/M}"""
    if spectrum.side != TransformSide.RIGHT:
        raise SideMismatchError(f"idqft_right needs a right-sided spectrum, got {spectrum.side.value}")
    return idqft(spectrum, workers)


def idqft_left(spectrum: DQSpectrum, workers: int = 1) -> DQSignal:
    """f(x) = (1/√M) Σ_t e^{+μ2πxt/M}·F(t)"""
    if spectrum.side != TransformSide.LEFT:
        raise SideMismatchError(f"idqft_left needs a left-sided spectrum, got {spectrum.side.value}")
    return idqft(spectrum, workers)
