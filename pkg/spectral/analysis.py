"""
Spectral analysis helpers for dual-quaternion spectra
Per-bin energy, dominant frequencies and similarity between two motions
"""

import logging
from typing import List, Tuple

import numpy as np

from exceptions import InvalidArgumentError
from .signals import DQSpectrum

logger = logging.getLogger(__name__)


def wrap_distance(length: int) -> np.ndarray:
    """d(k) = min(k, M - k) for k = 0..M-1"""
    if length < 1:
        raise InvalidArgumentError(f"Length must be positive, got {length}")
    k = np.arange(length)
    return np.minimum(k, length - k)


def bin_energy(spectrum: DQSpectrum) -> np.ndarray:
    """Squared 8-component norm of every coefficient"""
    return np.sum(spectrum.coefficients ** 2, axis=1)


def distance_energy(spectrum: DQSpectrum) -> np.ndarray:
    """Energy pooled by wrap-around distance (bins k and M - k together), index = d"""
    length = len(spectrum)
    return np.bincount(wrap_distance(length), weights=bin_energy(spectrum), minlength=length // 2 + 1)


def dominant_bins(spectrum: DQSpectrum, count: int = 3) -> List[Tuple[int, float]]:
    """
    The frequency distances carrying the most energy

    Args:
        spectrum: Input spectrum
        count: Number of distances to return

    Returns:
        (distance, energy) pairs, most energetic first; ties go to the smaller distance
    """
    if count < 0:
        raise InvalidArgumentError(f"count must be non-negative, got {count}")
    pooled = distance_energy(spectrum)
    # Stable sort on -energy keeps smaller distances first among equals
    order = np.argsort(-pooled, kind="stable")[:count]
    return [(int(d), float(pooled[d])) for d in order]


def spectral_similarity(first: DQSpectrum, second: DQSpectrum) -> float:
    """
    Cosine similarity of the distance-pooled energy profiles of two spectra

    Returns:
        Value in [0, 1]; 0 when either spectrum carries no energy
    """
    if len(first) != len(second):
        raise InvalidArgumentError(f"Spectra lengths differ: {len(first)} vs {len(second)}")
    a = distance_energy(first)
    b = distance_energy(second)
    norm = float(np.linalg.norm(a) * np.linalg.norm(b))
    if norm == 0.0:
        return 0.0
    return float(min(1.0, max(0.0, np.dot(a, b) / norm)))
