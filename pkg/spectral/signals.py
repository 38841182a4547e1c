"""
Signal and spectrum containers for the dual-quaternion Fourier transform
TransformAxis, TransformSide, DQSignal and DQSpectrum
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Tuple

import numpy as np

from algebra import DualQuaternion, Quaternion
from exceptions import InvalidArgumentError

logger = logging.getLogger(__name__)

AXIS_TOLERANCE = 1e-12


class TransformSide(str, Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class TransformAxis:
    """Pure unit quaternion μ playing the role of the imaginary unit in the kernel e^{-μθ}"""

    mu: Quaternion

    def __post_init__(self):
        if not self.mu.is_pure():
            raise InvalidArgumentError(f"Transform axis must be a pure quaternion, got w = {self.mu.w!r}")
        n = math.sqrt(self.mu.x ** 2 + self.mu.y ** 2 + self.mu.z ** 2)
        if abs(n - 1.0) > AXIS_TOLERANCE:
            raise InvalidArgumentError(f"Transform axis must be unit, got |μ| = {n!r}")

    @classmethod
    def from_vector(cls, vector: Iterable[float]) -> "TransformAxis":
        """Normalize a 3-vector into an axis"""
        v = np.asarray(list(vector), dtype=np.float64)
        if v.shape != (3,) or not np.all(np.isfinite(v)):
            raise InvalidArgumentError(f"Transform axis needs three finite components, got {v}")
        n = float(np.linalg.norm(v))
        if n <= 1e-12:
            raise InvalidArgumentError("Transform axis must be non-zero")
        return cls(Quaternion.pure(*(v / n)))

    @classmethod
    def default(cls) -> "TransformAxis":
        """(i + j + k)/√3"""
        return cls.from_vector((1.0, 1.0, 1.0))

    @property
    def vector(self) -> np.ndarray:
        return self.mu.vector

    def as_array(self) -> np.ndarray:
        return self.mu.as_array()


def _freeze(values, name: str) -> np.ndarray:
    array = np.array(values, dtype=np.float64, copy=True)
    if array.ndim != 2 or array.shape[1] != 8:
        raise InvalidArgumentError(f"{name} must have shape (M, 8), got {array.shape}")
    if array.shape[0] < 1:
        raise InvalidArgumentError(f"{name} must contain at least one sample")
    if not np.all(np.isfinite(array)):
        bad = int(np.argwhere(~np.isfinite(array))[0][0])
        raise InvalidArgumentError(f"{name} has a non-finite value at index {bad}")
    array.setflags(write=False)
    return array


def _check_rate(sample_rate: float) -> float:
    rate = float(sample_rate)
    if not math.isfinite(rate) or rate <= 0.0:
        raise InvalidArgumentError(f"Sample rate must be positive, got {sample_rate!r}")
    return rate


@dataclass(frozen=True, eq=False)
class DQSignal:
    """
    Length-M dual-quaternion sequence in the sample domain

    samples is a read-only (M, 8) float64 array ordered (wr, xr, yr, zr, wd, xd, yd, zd).
    """

    samples: np.ndarray
    sample_rate: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "samples", _freeze(self.samples, "Signal"))
        object.__setattr__(self, "sample_rate", _check_rate(self.sample_rate))

    @classmethod
    def from_dual_quaternions(cls, values: Iterable[DualQuaternion], sample_rate: float = 1.0) -> "DQSignal":
        rows = [dq.as_array() for dq in values]
        if not rows:
            raise InvalidArgumentError("Signal must contain at least one sample")
        return cls(np.stack(rows), sample_rate)

    def __len__(self) -> int:
        return self.samples.shape[0]

    def sample(self, index: int) -> DualQuaternion:
        return DualQuaternion.from_array(self.samples[index])

    def energy(self) -> float:
        return float(np.sum(self.samples * self.samples))


@dataclass(frozen=True, eq=False)
class DQSpectrum:
    """Length-M dual-quaternion sequence in the frequency domain, tagged with its side and axis"""

    coefficients: np.ndarray
    side: TransformSide
    axis: TransformAxis
    sample_rate: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "coefficients", _freeze(self.coefficients, "Spectrum"))
        object.__setattr__(self, "side", TransformSide(self.side))
        object.__setattr__(self, "sample_rate", _check_rate(self.sample_rate))

    def __len__(self) -> int:
        return self.coefficients.shape[0]

    def coefficient(self, index: int) -> DualQuaternion:
        return DualQuaternion.from_array(self.coefficients[index])

    def energy(self) -> float:
        return float(np.sum(self.coefficients * self.coefficients))

    def with_coefficients(self, coefficients: np.ndarray) -> "DQSpectrum":
        """Same metadata, new coefficients"""
        return DQSpectrum(coefficients, self.side, self.axis, self.sample_rate)


def split_parts(values: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Real and dual quaternion parts of an (M, 8) array"""
    return values[:, :4], values[:, 4:]
