"""
Encoding between motion tracks and dual-quaternion signals
rigid: unit dual-quaternions q_r + ε·½·t·q_r; pure: rotation-vector channels + ε·translation channels
"""

import logging
from enum import Enum
from typing import Optional, Union

import numpy as np

from algebra import (
    DualQuaternion,
    Quaternion,
    dq_normalize,
    q_conjugate_array,
    q_exp,
    q_log,
    q_mul_array,
)
from exceptions import DegenerateInputError, DegenerateSampleError, InvalidArgumentError, TrackValidationError
from spectral import DQSignal
from .tracks import EulerSample, MotionSample, MotionTrack, TrackKind

logger = logging.getLogger(__name__)

DECODE_UNIT_TOLERANCE = 1e-6


class Encoding(str, Enum):
    RIGID = "rigid"
    PURE = "pure"


def _pure_rows(vectors: np.ndarray) -> np.ndarray:
    rows = np.zeros((vectors.shape[0], 4))
    rows[:, 1:] = vectors
    return rows


def align_hemisphere(rotations: np.ndarray) -> np.ndarray:
    """
    Negate rotations so consecutive quaternions have non-negative inner product

    Each sample keeps the sign of the already-aligned previous one, hence the running product.
    """
    if rotations.shape[0] < 2:
        return rotations.copy()
    inner = np.einsum('ij,ij->i', rotations[1:], rotations[:-1])
    steps = np.where(inner < 0.0, -1.0, 1.0)
    signs = np.concatenate([[1.0], np.cumprod(steps)])
    flips = int(np.count_nonzero(steps < 0.0))
    if flips:
        logger.debug(f"Hemisphere alignment flipped {flips} rotation sign changes")
    return rotations * signs[:, None]


def _unit_rotations(track: MotionTrack) -> np.ndarray:
    rotations = track.rotations()
    return rotations / np.linalg.norm(rotations, axis=1, keepdims=True)


def track_to_signal(track: MotionTrack, encoding: Union[str, Encoding] = Encoding.RIGID,
                    hemisphere_align: bool = True) -> DQSignal:
    """
    Encode a motion track as a dual-quaternion signal

    Args:
        track: Validated track
        encoding: rigid (unit dual-quaternions) or pure (rotation vectors + ε·translations)
        hemisphere_align: Remove double-cover sign jumps between consecutive rotations first

    Returns:
        DQSignal carrying the track's sample rate
    """
    encoding = Encoding(encoding)
    rows = np.zeros((len(track), 8))

    if track.kind == TrackKind.EULER:
        if encoding == Encoding.RIGID:
            raise InvalidArgumentError("Rigid encoding needs rotation quaternions; Euler tracks only support pure encoding")
        rows[:, 1:4] = track.angles()
        return DQSignal(rows, track.sample_rate)

    rotations = _unit_rotations(track)
    if hemisphere_align:
        rotations = align_hemisphere(rotations)
    translations = track.translations()

    if encoding == Encoding.RIGID:
        rows[:, :4] = rotations
        rows[:, 4:] = 0.5 * q_mul_array(_pure_rows(translations), rotations)
    else:
        for index, r in enumerate(rotations):
            rows[index, 1:4] = 2.0 * q_log(Quaternion.from_array(r)).vector
        rows[:, 5:8] = translations

    logger.debug(f"Encoded {len(track)} samples with {encoding.value} encoding")
    return DQSignal(rows, track.sample_rate)


def _rigid_rows(f: DQSignal, renormalize: bool) -> np.ndarray:
    rows = np.array(f.samples)
    for index in range(len(f)):
        if renormalize:
            try:
                rows[index] = dq_normalize(DualQuaternion.from_array(rows[index])).as_array()
            except DegenerateInputError:
                raise DegenerateSampleError(index) from None
            continue
        real, dual = rows[index, :4], rows[index, 4:]
        if abs(float(np.dot(real, real)) - 1.0) > DECODE_UNIT_TOLERANCE or abs(float(np.dot(real, dual))) > DECODE_UNIT_TOLERANCE:
            raise TrackValidationError(index, "sample is not a unit dual-quaternion; enable renormalization")
    return rows


def signal_to_track(f: DQSignal, encoding: Union[str, Encoding] = Encoding.RIGID,
                    sample_rate: Optional[float] = None, kind: Union[str, TrackKind] = TrackKind.RIGID,
                    renormalize: bool = False, start_time: float = 0.0) -> MotionTrack:
    """
    Decode a dual-quaternion signal back into a motion track

    Args:
        f: Signal to decode
        encoding: Encoding the signal was produced with
        sample_rate: Output rate (defaults to the signal's)
        kind: rigid track or Euler-layout track (pure encoding only)
        renormalize: Project rigid samples onto unit dual-quaternions before decoding
        start_time: Timestamp of the first sample

    Returns:
        MotionTrack with timestamps start_time + n / sample_rate
    """
    encoding = Encoding(encoding)
    kind = TrackKind(kind)
    rate = f.sample_rate if sample_rate is None else float(sample_rate)
    if rate <= 0.0:
        raise InvalidArgumentError(f"Sample rate must be positive, got {sample_rate!r}")
    times = start_time + np.arange(len(f)) / rate

    if encoding == Encoding.RIGID:
        if kind == TrackKind.EULER:
            raise InvalidArgumentError("Rigid signals decode to rigid tracks only")
        rows = _rigid_rows(f, renormalize)
        real = rows[:, :4] / np.linalg.norm(rows[:, :4], axis=1, keepdims=True)
        translations = 2.0 * q_mul_array(rows[:, 4:], q_conjugate_array(rows[:, :4]))[:, 1:]
        samples = [MotionSample(float(t), Quaternion.from_array(r), tuple(float(v) for v in p))
                   for t, r, p in zip(times, real, translations)]
        return MotionTrack(tuple(samples), rate)

    omegas = f.samples[:, 1:4]
    if kind == TrackKind.EULER:
        if np.any(f.samples[:, 5:8] != 0.0):
            logger.warning("Dropping translation channels: Euler tracks carry rotations only")
        samples = [EulerSample(float(t), tuple(float(v) for v in w)) for t, w in zip(times, omegas)]
        return MotionTrack(tuple(samples), rate)

    samples = [
        MotionSample(float(t), q_exp(Quaternion.pure(*(0.5 * w))), tuple(float(v) for v in p))
        for t, w, p in zip(times, omegas, f.samples[:, 5:8])
    ]
    return MotionTrack(tuple(samples), rate)
