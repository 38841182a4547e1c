"""
Synthetic screw-motion tracks
Superposed cosine rotation vectors and translations at chosen frequency distances
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from algebra import Quaternion, q_exp
from exceptions import InvalidArgumentError
from .tracks import MotionSample, MotionTrack

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SyntheticComponent:
    distance: int
    rotation_amplitude: float
    translation_amplitude: float
    axis: Tuple[float, float, float]


def parse_components(spec: str) -> List[SyntheticComponent]:
    """
    Parse "b:rotAmp:transAmp:ax,ay,az;..." into components

    An empty or blank string yields no components.
    """
    components = []
    for position, chunk in enumerate(part.strip() for part in (spec or "").split(';')):
        if not chunk:
            continue
        fields = chunk.split(':')
        if len(fields) != 4:
            raise InvalidArgumentError(f"Component {position + 1} '{chunk}' needs b:rotAmp:transAmp:ax,ay,az")
        try:
            distance = int(fields[0])
            rotation = float(fields[1])
            translation = float(fields[2])
            axis = tuple(float(v) for v in fields[3].split(','))
        except ValueError:
            raise InvalidArgumentError(f"Component {position + 1} '{chunk}' has a non-numeric field") from None
        if len(axis) != 3:
            raise InvalidArgumentError(f"Component {position + 1} axis needs three values, got {len(axis)}")
        if not all(math.isfinite(v) for v in (rotation, translation) + axis):
            raise InvalidArgumentError(f"Component {position + 1} has a non-finite value")
        components.append(SyntheticComponent(distance, rotation, translation, axis))
    return components


def generate_synthetic(length: int, components: Sequence[SyntheticComponent],
                       sample_rate: float = 1.0) -> MotionTrack:
    """
    Generate a rigid track of superposed sinusoidal screw motions

    Per frame n, component (b, A, T, â) contributes A·cos(2πbn/M)·â to the rotation
    vector ω and T·cos(2πbn/M)·â to the translation; rotation = exp(ω/2).

    Args:
        length: Number of frames M (>= 1)
        components: Components with distance b in 0..M//2
        sample_rate: Frames per second; timestamps are n / sample_rate

    Returns:
        MotionTrack
    """
    if int(length) != length or length < 1:
        raise InvalidArgumentError(f"Length must be a positive integer, got {length!r}")
    if not math.isfinite(sample_rate) or sample_rate <= 0.0:
        raise InvalidArgumentError(f"Sample rate must be positive, got {sample_rate!r}")

    n = np.arange(length)
    omega = np.zeros((length, 3))
    translation = np.zeros((length, 3))
    for component in components:
        if component.distance < 0 or component.distance > length // 2:
            raise InvalidArgumentError(f"Bin distance {component.distance} outside 0..{length // 2}")
        axis = np.asarray(component.axis, dtype=np.float64)
        norm = float(np.linalg.norm(axis))
        if norm <= 1e-12:
            if component.rotation_amplitude != 0.0 or component.translation_amplitude != 0.0:
                raise InvalidArgumentError("Component axis must be non-zero when its amplitude is non-zero")
            continue
        # Cosine phase keeps b = 0 (constant offset) and b = M/2 (alternating) non-trivial
        wave = np.cos(2.0 * np.pi * component.distance * n / length)[:, None] * (axis / norm)
        omega += component.rotation_amplitude * wave
        translation += component.translation_amplitude * wave

    samples = tuple(
        MotionSample(index / sample_rate, q_exp(Quaternion.pure(*(0.5 * omega[index]))),
                     tuple(float(v) for v in translation[index]))
        for index in range(length)
    )
    logger.info(f"Generated synthetic track: M={length}, {len(components)} components")
    return MotionTrack(samples, sample_rate)
