"""
Spectral engine for the dqmotion toolkit
Discrete dual-quaternion Fourier transforms (reference and fast paths) plus spectrum analysis
"""

from .signals import TransformSide, TransformAxis, DQSignal, DQSpectrum
from .kernel_cache import KernelCache, kernel_cache
from .transform import kernel, dqft, dqft_right, dqft_left, idqft, idqft_right, idqft_left
from .fast import dqft_fast, idqft_fast, perpendicular_basis
from .analysis import wrap_distance, bin_energy, distance_energy, dominant_bins, spectral_similarity

__all__ = [
    'TransformSide', 'TransformAxis', 'DQSignal', 'DQSpectrum',
    'KernelCache', 'kernel_cache',
    'kernel', 'dqft', 'dqft_right', 'dqft_left', 'idqft', 'idqft_right', 'idqft_left',
    'dqft_fast', 'idqft_fast', 'perpendicular_basis',
    'wrap_distance', 'bin_energy', 'distance_energy', 'dominant_bins', 'spectral_similarity',
]
