"""
Frequency masks for DQFT filtering
Low-pass, high-pass, band-pass and band-stop gains over wrap-around frequency distance
"""

import logging
from dataclasses import dataclass

import numpy as np

from exceptions import InvalidArgumentError
from spectral import DQSpectrum, wrap_distance

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FrequencyMask:
    """M real gains in [0, 1], applied pointwise to a spectrum"""

    gains: np.ndarray

    def __post_init__(self):
        gains = np.array(self.gains, dtype=np.float64, copy=True).reshape(-1)
        if gains.size < 1:
            raise InvalidArgumentError("Mask must have at least one gain")
        if not np.all(np.isfinite(gains)) or np.any(gains < 0.0) or np.any(gains > 1.0):
            raise InvalidArgumentError("Mask gains must be finite and within [0, 1]")
        gains.setflags(write=False)
        object.__setattr__(self, "gains", gains)

    @property
    def length(self) -> int:
        return int(self.gains.size)

    def __len__(self) -> int:
        return self.length

    @property
    def kept_bins(self) -> int:
        return int(np.count_nonzero(self.gains))

    def complement(self) -> "FrequencyMask":
        return FrequencyMask(1.0 - self.gains)


def _check_length(length: int) -> None:
    if int(length) != length or length < 1:
        raise InvalidArgumentError(f"Mask length must be a positive integer, got {length!r}")


def _check_cutoff(name: str, value: int) -> None:
    if int(value) != value or value < 0:
        raise InvalidArgumentError(f"{name} must be a non-negative integer, got {value!r}")


def make_low_pass(length: int, cutoff: int) -> FrequencyMask:
    """gain(k) = 1 if d(k) <= cutoff else 0; cutoff >= M//2 passes everything"""
    _check_length(length)
    _check_cutoff("cutoff", cutoff)
    mask = FrequencyMask((wrap_distance(length) <= cutoff).astype(np.float64))
    logger.debug(f"Low-pass M={length} cutoff={cutoff} keeps {mask.kept_bins} bins")
    return mask


def make_high_pass(length: int, cutoff: int) -> FrequencyMask:
    """Complement of the low-pass mask with the same cutoff"""
    return make_low_pass(length, cutoff).complement()


def make_band_pass(length: int, lo: int, hi: int) -> FrequencyMask:
    """gain(k) = 1 iff lo <= d(k) <= hi"""
    _check_length(length)
    _check_cutoff("lo", lo)
    _check_cutoff("hi", hi)
    if lo > hi:
        raise InvalidArgumentError(f"Band lower edge {lo} exceeds upper edge {hi}")
    distance = wrap_distance(length)
    return FrequencyMask(((distance >= lo) & (distance <= hi)).astype(np.float64))


def make_band_stop(length: int, lo: int, hi: int) -> FrequencyMask:
    """Complement of the band-pass mask"""
    return make_band_pass(length, lo, hi).complement()


def apply_mask(spectrum: DQSpectrum, mask: FrequencyMask) -> DQSpectrum:
    """
    Scale coefficient k by gain(k) on all eight components

    Real gains commute with dual-quaternions, so the side of application is irrelevant.
    """
    if mask.length != len(spectrum):
        raise InvalidArgumentError(f"Mask length {mask.length} does not match spectrum length {len(spectrum)}")
    return spectrum.with_coefficients(spectrum.coefficients * mask.gains[:, None])
