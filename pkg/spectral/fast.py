"""
Fast DQFT path based on the symplectic decomposition
Each quaternion part splits into two complex sequences that go through numpy.fft
"""

import logging
import math
from typing import Optional, Tuple

import numpy as np

from .signals import DQSignal, DQSpectrum, TransformAxis, TransformSide

logger = logging.getLogger(__name__)

# Basis candidates for μ₂ are taken in i, j, k order
_BASIS = np.eye(3)
_PARALLEL_LIMIT = 0.9


def perpendicular_basis(axis: TransformAxis) -> Tuple[np.ndarray, np.ndarray]:
    """
    Complete μ to a right-handed orthonormal frame (μ, μ₂, μ₃ = μ·μ₂)

    μ₂ is the Gram–Schmidt residue of the first standard basis vector with |⟨e, μ⟩| < 0.9.
    """
    mu = axis.vector
    for e in _BASIS:
        if abs(float(np.dot(e, mu))) < _PARALLEL_LIMIT:
            mu2 = e - np.dot(e, mu) * mu
            mu2 = mu2 / np.linalg.norm(mu2)
            return mu2, np.cross(mu, mu2)
    raise AssertionError("unreachable: a unit vector has a component below 0.9 on some axis")


def _decompose(part: np.ndarray, frame) -> Tuple[np.ndarray, np.ndarray]:
    """q = (a + bμ) + (c + dμ)μ₂  ->  simplex a + ib, perplex c + id"""
    mu, mu2, mu3 = frame
    vector = part[:, 1:]
    simplex = part[:, 0] + 1j * (vector @ mu)
    perplex = (vector @ mu2) + 1j * (vector @ mu3)
    return simplex, perplex


def _recompose(simplex: np.ndarray, perplex: np.ndarray, frame) -> np.ndarray:
    mu, mu2, mu3 = frame
    vector = (np.outer(simplex.imag, mu) + np.outer(perplex.real, mu2) + np.outer(perplex.imag, mu3))
    return np.column_stack([simplex.real, vector])


def _negative(z: np.ndarray) -> np.ndarray:
    """(1/√M) Σ z(x) e^{-i2πxt/M}"""
    return np.fft.fft(z) / math.sqrt(len(z))


def _positive(z: np.ndarray) -> np.ndarray:
    """(1/√M) Σ z(x) e^{+i2πxt/M}"""
    return np.fft.ifft(z) * math.sqrt(len(z))


def _fast_sum(values: np.ndarray, axis: TransformAxis, side: TransformSide, inverse: bool) -> np.ndarray:
    frame = (axis.vector, *perpendicular_basis(axis))
    simplex_step = _positive if inverse else _negative
    # μ₂ anticommutes with μ, so a right-hand kernel reaches the perplex part conjugated
    if side == TransformSide.RIGHT:
        perplex_step = _negative if inverse else _positive
    else:
        perplex_step = simplex_step

    out = []
    for part in (values[:, :4], values[:, 4:]):
        simplex, perplex = _decompose(part, frame)
        out.append(_recompose(simplex_step(simplex), perplex_step(perplex), frame))
    return np.concatenate(out, axis=1)


def dqft_fast(f: DQSignal, axis: Optional[TransformAxis] = None,
              side: TransformSide = TransformSide.RIGHT) -> DQSpectrum:
    """
    Forward DQFT in O(M log M)

    Args:
        f: Input signal
        axis: Transform axis (default (i + j + k)/√3)
        side: Which side the kernel multiplies

    Returns:
        Spectrum numerically equal to the reference transform
    """
    axis = axis or TransformAxis.default()
    side = TransformSide(side)
    logger.debug(f"Fast DQFT {side.value} M={len(f)}")
    return DQSpectrum(_fast_sum(f.samples, axis, side, inverse=False), side, axis, f.sample_rate)


def idqft_fast(spectrum: DQSpectrum) -> DQSignal:
    """Inverse DQFT in O(M log M) on the spectrum's own side"""
    logger.debug(f"Fast IDQFT {spectrum.side.value} M={len(spectrum)}")
    samples = _fast_sum(spectrum.coefficients, spectrum.axis, spectrum.side, inverse=True)
    return DQSignal(samples, spectrum.sample_rate)
