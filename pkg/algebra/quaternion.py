"""
Quaternion algebra for the dqmotion toolkit
Hamilton product, conjugate, modulus, scalar/vector split and the exp/log maps
"""

import logging
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from exceptions import InvalidArgumentError

logger = logging.getLogger(__name__)

UNIT_TOLERANCE = 1e-9
SERIES_THRESHOLD = 1e-6


def q_mul_array(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """
    Hamilton product over the last axis of two (..., 4) arrays ordered (w, x, y, z)

    Args:
        a: Left operands
        b: Right operands (broadcast against a)

    Returns:
        Array of products with the broadcast shape
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    aw, ax, ay, az = a[..., 0], a[..., 1], a[..., 2], a[..., 3]
    bw, bx, by, bz = b[..., 0], b[..., 1], b[..., 2], b[..., 3]
    return np.stack([
        aw * bw - ax * bx - ay * by - az * bz,
        aw * bx + ax * bw + ay * bz - az * by,
        aw * by - ax * bz + ay * bw + az * bx,
        aw * bz + ax * by - ay * bx + az * bw,
    ], axis=-1)


def q_conjugate_array(q: np.ndarray) -> np.ndarray:
    """Conjugate over the last axis of a (..., 4) array"""
    out = np.array(q, dtype=np.float64, copy=True)
    out[..., 1:] = -out[..., 1:]
    return out


@dataclass(frozen=True)
class Quaternion:
    """Immutable quaternion w + xi + yj + zk with finite components"""

    w: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    def __post_init__(self):
        for name in ("w", "x", "y", "z"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise InvalidArgumentError(f"Quaternion component {name} is not finite: {value}")
            object.__setattr__(self, name, value)

    @classmethod
    def identity(cls) -> "Quaternion":
        return cls(1.0, 0.0, 0.0, 0.0)

    @classmethod
    def pure(cls, x: float, y: float, z: float) -> "Quaternion":
        return cls(0.0, x, y, z)

    @classmethod
    def from_array(cls, values) -> "Quaternion":
        w, x, y, z = (float(v) for v in values)
        return cls(w, x, y, z)

    @classmethod
    def unit(cls, w: float, x: float, y: float, z: float, renormalize: bool = False) -> "Quaternion":
        """
        Build a unit quaternion, either asserting unit length or renormalizing explicitly

        Args:
            w, x, y, z: Components
            renormalize: Divide by the modulus instead of rejecting a non-unit value

        Returns:
            Unit quaternion
        """
        q = cls(w, x, y, z)
        if renormalize:
            n = q_norm(q)
            if n <= 1e-12:
                raise InvalidArgumentError("Cannot renormalize a zero quaternion")
            return cls(w / n, x / n, y / n, z / n)
        if not q.is_unit():
            raise InvalidArgumentError(f"Quaternion is not unit: |q| = {q_norm(q)!r}")
        return q

    def as_array(self) -> np.ndarray:
        return np.array([self.w, self.x, self.y, self.z], dtype=np.float64)

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=np.float64)

    def is_pure(self) -> bool:
        return self.w == 0.0

    def is_unit(self, tolerance: float = UNIT_TOLERANCE) -> bool:
        return abs(self.w ** 2 + self.x ** 2 + self.y ** 2 + self.z ** 2 - 1.0) <= tolerance

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            return q_mul(self, other)
        if isinstance(other, (int, float)):
            return Quaternion(self.w * other, self.x * other, self.y * other, self.z * other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return self.__mul__(other)
        return NotImplemented

    def __add__(self, other):
        if not isinstance(other, Quaternion):
            return NotImplemented
        return Quaternion(self.w + other.w, self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other):
        if not isinstance(other, Quaternion):
            return NotImplemented
        return Quaternion(self.w - other.w, self.x - other.x, self.y - other.y, self.z - other.z)

    def __neg__(self):
        return Quaternion(-self.w, -self.x, -self.y, -self.z)


def q_mul(a: Quaternion, b: Quaternion) -> Quaternion:
    """Hamilton product a·b (ij = k, ji = -k, i² = j² = k² = -1)"""
    return Quaternion.from_array(q_mul_array(a.as_array(), b.as_array()))


def q_conjugate(q: Quaternion) -> Quaternion:
    return Quaternion(q.w, -q.x, -q.y, -q.z)


def q_norm(q: Quaternion) -> float:
    return math.sqrt(q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z)


def q_inner(a: Quaternion, b: Quaternion) -> float:
    """Inner product over the four components"""
    return a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z


def q_split(q: Quaternion) -> Tuple[float, Quaternion]:
    """Split q into its scalar part s(q) and vector part v(q) = (0, x, y, z)"""
    return q.w, Quaternion(0.0, q.x, q.y, q.z)


def q_exp(q: Quaternion) -> Quaternion:
    """
    Exponential of a pure quaternion: cos|q| + sin|q|·q/|q|

    Args:
        q: Pure quaternion (w == 0)

    Returns:
        Unit quaternion; the identity for q = 0
    """
    if not q.is_pure():
        raise InvalidArgumentError(f"q_exp expects a pure quaternion, got w = {q.w!r}")
    n = math.sqrt(q.x * q.x + q.y * q.y + q.z * q.z)
    if n < SERIES_THRESHOLD:
        s = 1.0 - n * n / 6.0
    else:
        s = math.sin(n) / n
    return Quaternion(math.cos(n), s * q.x, s * q.y, s * q.z)


def log_coefficient(n: float, w: float) -> float:
    """
    atan2(n, w) / n, the factor mapping the vector part of a unit quaternion to its log

    Uses the series of atan(z)/z (z = n/w) when n is below the series threshold and w > 0.
    """
    if n < SERIES_THRESHOLD and w > 0.0:
        z2 = (n / w) ** 2
        return (1.0 - z2 / 3.0 + z2 * z2 / 5.0) / w
    return math.atan2(n, w) / n


def q_log(q: Quaternion) -> Quaternion:
    """
    Principal logarithm of a unit quaternion

    Args:
        q: Unit quaternion (|q| = 1 within 1e-9)

    Returns:
        Pure quaternion θ·v̂ with θ = atan2(|v(q)|, w) in [0, π]
    """
    if not q.is_unit():
        raise InvalidArgumentError(f"q_log expects a unit quaternion, got |q| = {q_norm(q)!r}")
    n = math.sqrt(q.x * q.x + q.y * q.y + q.z * q.z)
    if n == 0.0:
        if q.w > 0.0:
            return Quaternion()
        # -1 has no unique axis; +x by convention
        return Quaternion.pure(math.pi, 0.0, 0.0)
    k = log_coefficient(n, q.w)
    return Quaternion(0.0, k * q.x, k * q.y, k * q.z)


def q_from_axis_angle(axis, angle: float) -> Quaternion:
    """Unit quaternion rotating by angle (radians) about axis"""
    axis = np.asarray(axis, dtype=np.float64)
    n = float(np.linalg.norm(axis))
    if n <= 1e-12:
        if angle == 0.0:
            return Quaternion.identity()
        raise InvalidArgumentError("Rotation axis must be non-zero")
    half = 0.5 * angle / n
    return q_exp(Quaternion.pure(*(half * axis)))


def q_to_axis_angle(q: Quaternion) -> Tuple[np.ndarray, float]:
    """Inverse of q_from_axis_angle; the identity maps to (+x axis, 0)"""
    log = q_log(q)
    half = float(np.linalg.norm(log.vector))
    if half == 0.0:
        return np.array([1.0, 0.0, 0.0]), 0.0
    return log.vector / half, 2.0 * half
