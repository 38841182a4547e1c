"""
Filtering pipeline for dual-quaternion motion signals
Transform -> mask -> inverse transform -> optional renormalization to valid rigid motions
"""

import logging
from dataclasses import asdict, dataclass
from typing import Any, Dict, Optional, Tuple

import numpy as np

from algebra import DualQuaternion, dq_normalize
from exceptions import DegenerateInputError, DegenerateSampleError
from spectral import (
    DQSignal,
    DQSpectrum,
    TransformAxis,
    TransformSide,
    dqft,
    dqft_fast,
    idqft,
    idqft_fast,
)
from .masks import FrequencyMask, apply_mask, make_band_pass

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FilterReport:
    kept_bins: int
    attenuated_energy_fraction: float
    renormalized: bool
    input_energy: float
    output_energy: float

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    def summary(self) -> str:
        """Single report line with deterministic formatting"""
        return (f"kept_bins={self.kept_bins} "
                f"attenuated_energy_fraction={self.attenuated_energy_fraction:.17g} "
                f"renormalized={str(self.renormalized).lower()}")


def _forward(f: DQSignal, axis: TransformAxis, side: TransformSide, fast: bool, workers: int) -> DQSpectrum:
    return dqft_fast(f, axis, side) if fast else dqft(f, axis, side, workers)


def _inverse(spectrum: DQSpectrum, fast: bool, workers: int) -> DQSignal:
    return idqft_fast(spectrum) if fast else idqft(spectrum, workers)


def renormalize_signal(f: DQSignal) -> DQSignal:
    """
    Project every sample onto the unit dual-quaternions, keeping hemisphere continuity

    A sample is negated when its real part points away from the previous output sample.
    """
    rows = np.empty_like(f.samples)
    flips = 0
    for index in range(len(f)):
        try:
            unit = dq_normalize(DualQuaternion.from_array(f.samples[index]))
        except DegenerateInputError:
            raise DegenerateSampleError(index) from None
        row = unit.as_array()
        if index > 0 and float(np.dot(row[:4], rows[index - 1, :4])) < 0.0:
            row = -row
            flips += 1
        rows[index] = row
    if flips:
        logger.info(f"Hemisphere alignment flipped {flips} of {len(f)} renormalized samples")
    return DQSignal(rows, f.sample_rate)


def filter_signal(f: DQSignal, mask: FrequencyMask, side: TransformSide = TransformSide.RIGHT,
                  axis: Optional[TransformAxis] = None, renormalize: bool = False,
                  fast: bool = False, workers: int = 1) -> Tuple[DQSignal, FilterReport]:
    """
    Filter a signal in the frequency domain

    Args:
        f: Input signal
        mask: Gains, one per bin
        side: Transform side used for both directions
        axis: Transform axis (default (i + j + k)/√3)
        renormalize: Project the output back onto unit dual-quaternions
        fast: Use the FFT path instead of the reference sums
        workers: Threads for the reference path

    Returns:
        (filtered signal, report)
    """
    axis = axis or TransformAxis.default()
    spectrum = _forward(f, axis, TransformSide(side), fast, workers)
    masked = apply_mask(spectrum, mask)
    output = _inverse(masked, fast, workers)

    input_energy = spectrum.energy()
    output_energy = masked.energy()
    attenuated = 0.0 if input_energy == 0.0 else 1.0 - output_energy / input_energy
    attenuated = min(1.0, max(0.0, attenuated))

    if renormalize:
        output = renormalize_signal(output)

    report = FilterReport(
        kept_bins=mask.kept_bins,
        attenuated_energy_fraction=attenuated,
        renormalized=renormalize,
        input_energy=input_energy,
        output_energy=output_energy,
    )
    logger.info(f"Filtered M={len(f)} side={TransformSide(side).value}: {report.summary()}")
    return output, report


def split_band(f: DQSignal, lo: int, hi: int, side: TransformSide = TransformSide.RIGHT,
               axis: Optional[TransformAxis] = None, fast: bool = False,
               workers: int = 1) -> Tuple[DQSignal, DQSignal]:
    """
    Extract the lo..hi band of a signal and return it with the residual

    extracted + residual reproduces f up to rounding.
    """
    axis = axis or TransformAxis.default()
    band = make_band_pass(len(f), lo, hi)
    spectrum = _forward(f, axis, TransformSide(side), fast, workers)
    extracted = _inverse(apply_mask(spectrum, band), fast, workers)
    residual = _inverse(apply_mask(spectrum, band.complement()), fast, workers)
    return extracted, residual
