"""
Frequency-domain filters for dual-quaternion motion signals
Mask construction and the transform -> mask -> inverse pipeline
"""

from .masks import (
    FrequencyMask,
    make_low_pass,
    make_high_pass,
    make_band_pass,
    make_band_stop,
    apply_mask,
)
from .pipeline import FilterReport, filter_signal, renormalize_signal, split_band

__all__ = [
    'FrequencyMask', 'make_low_pass', 'make_high_pass', 'make_band_pass', 'make_band_stop',
    'apply_mask', 'FilterReport', 'filter_signal', 'renormalize_signal', 'split_band',
]
