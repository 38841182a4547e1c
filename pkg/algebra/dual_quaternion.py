"""
Dual-quaternion algebra for the dqmotion toolkit
Arithmetic, conjugate variants, magnitude, normalization, exp/log and rigid point transforms
"""

import logging
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from exceptions import DegenerateInputError, InvalidArgumentError
from .quaternion import (
    SERIES_THRESHOLD,
    UNIT_TOLERANCE,
    Quaternion,
    log_coefficient,
    q_conjugate,
    q_inner,
    q_mul,
    q_mul_array,
    q_norm,
)

logger = logging.getLogger(__name__)

DEGENERATE_NORM = 1e-12


@dataclass(frozen=True)
class DualNumber:
    """a + bε with ε² = 0"""

    real: float = 0.0
    dual: float = 0.0

    def __post_init__(self):
        for name in ("real", "dual"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise InvalidArgumentError(f"DualNumber {name} part is not finite: {value}")
            object.__setattr__(self, name, value)

    def __add__(self, other: "DualNumber") -> "DualNumber":
        return DualNumber(self.real + other.real, self.dual + other.dual)

    def __mul__(self, other: "DualNumber") -> "DualNumber":
        return DualNumber(self.real * other.real, self.real * other.dual + self.dual * other.real)


@dataclass(frozen=True)
class DualQuaternion:
    """ζ = q_r + q_d ε"""

    real: Quaternion = Quaternion(1.0, 0.0, 0.0, 0.0)
    dual: Quaternion = Quaternion()

    @classmethod
    def identity(cls) -> "DualQuaternion":
        return cls(Quaternion.identity(), Quaternion())

    @classmethod
    def zero(cls) -> "DualQuaternion":
        return cls(Quaternion(), Quaternion())

    @classmethod
    def from_array(cls, values) -> "DualQuaternion":
        values = np.asarray(values, dtype=np.float64).reshape(8)
        return cls(Quaternion.from_array(values[:4]), Quaternion.from_array(values[4:]))

    @classmethod
    def point(cls, v) -> "DualQuaternion":
        """Point encoding p = 1 + ε(0, vx, vy, vz)"""
        vx, vy, vz = (float(c) for c in v)
        return cls(Quaternion.identity(), Quaternion.pure(vx, vy, vz))

    def as_array(self) -> np.ndarray:
        return np.concatenate([self.real.as_array(), self.dual.as_array()])

    def is_unit(self, tolerance: float = UNIT_TOLERANCE) -> bool:
        return self.real.is_unit(tolerance) and abs(q_inner(self.real, self.dual)) <= tolerance

    def is_point(self) -> bool:
        return self.real == Quaternion.identity() and self.dual.is_pure()

    def __mul__(self, other):
        if isinstance(other, DualQuaternion):
            return dq_mul(self, other)
        if isinstance(other, (int, float)):
            return dq_scale(other, self)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return dq_scale(other, self)
        return NotImplemented

    def __add__(self, other):
        if not isinstance(other, DualQuaternion):
            return NotImplemented
        return dq_add(self, other)

    def __neg__(self):
        return dq_scale(-1.0, self)


def dq_mul_array(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Dual-quaternion product over the last axis of two (..., 8) arrays"""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    real = q_mul_array(a[..., :4], b[..., :4])
    dual = q_mul_array(a[..., :4], b[..., 4:]) + q_mul_array(a[..., 4:], b[..., :4])
    return np.concatenate([real, dual], axis=-1)


def dq_add(a: DualQuaternion, b: DualQuaternion) -> DualQuaternion:
    return DualQuaternion(a.real + b.real, a.dual + b.dual)


def dq_scale(s: float, a: DualQuaternion) -> DualQuaternion:
    s = float(s)
    return DualQuaternion(a.real * s, a.dual * s)


def dq_mul(a: DualQuaternion, b: DualQuaternion) -> DualQuaternion:
    """q_r1·q_r2 + (q_r1·q_d2 + q_d1·q_r2)ε"""
    return DualQuaternion.from_array(dq_mul_array(a.as_array(), b.as_array()))


def dq_inner(a: DualQuaternion, b: DualQuaternion) -> float:
    """Inner product over all eight coefficients"""
    return q_inner(a.real, b.real) + q_inner(a.dual, b.dual)


def dq_conjugate(a: DualQuaternion, variant: int = 1) -> DualQuaternion:
    """
    One of the three dual-quaternion conjugates

    Args:
        a: Dual-quaternion
        variant: 1 -> q_r* + q_d* ε, 2 -> q_r - q_d ε, 3 -> q_r* - q_d* ε

    Returns:
        The requested conjugate
    """
    if variant == 1:
        return DualQuaternion(q_conjugate(a.real), q_conjugate(a.dual))
    if variant == 2:
        return DualQuaternion(a.real, -a.dual)
    if variant == 3:
        return DualQuaternion(q_conjugate(a.real), -q_conjugate(a.dual))
    raise InvalidArgumentError(f"Unknown conjugate variant: {variant!r} (expected 1, 2 or 3)")


def dq_magnitude(a: DualQuaternion) -> DualNumber:
    """ζ·ζ* (variant 1) collapsed to the dual number (|q_r|², 2⟨q_r, q_d⟩)"""
    return DualNumber(q_inner(a.real, a.real), 2.0 * q_inner(a.real, a.dual))


def dq_normalize(a: DualQuaternion) -> DualQuaternion:
    """
    Project a dual-quaternion onto the unit dual-quaternions

    Divides both parts by |q_r| and removes the component of q_d parallel to q_r.
    """
    n = q_norm(a.real)
    if n <= DEGENERATE_NORM:
        raise DegenerateInputError(f"Cannot normalize: |q_r| = {n!r}")
    real = a.real * (1.0 / n)
    dual = a.dual * (1.0 / n)
    dual = dual - real * q_inner(dual, real)
    return DualQuaternion(real, dual)


def require_unit(a: DualQuaternion, operation: str) -> None:
    if not a.is_unit():
        raise InvalidArgumentError(
            f"{operation} expects a unit dual-quaternion "
            f"(|q_r|² = {q_inner(a.real, a.real)!r}, ⟨q_r, q_d⟩ = {q_inner(a.real, a.dual)!r})"
        )


def dq_exp(a: DualQuaternion) -> DualQuaternion:
    """
    Exponential of a dual-quaternion with pure real and dual parts

    Evaluated as the dual extension cos(n̂) + sin(n̂)/n̂ · v̂ with n̂ the dual norm of
    v̂ = v_r + ε v_d; below the series threshold the sinc terms use their expansions,
    so exp(ε·½t) = 1 + ε·½t exactly.
    """
    if not (a.real.is_pure() and a.dual.is_pure()):
        raise InvalidArgumentError("dq_exp expects pure real and dual parts")
    vr = a.real.vector
    vd = a.dual.vector
    n = float(np.linalg.norm(vr))
    rd = float(np.dot(vr, vd))
    if n < SERIES_THRESHOLD:
        n2 = n * n
        s = 1.0 - n2 / 6.0 + n2 * n2 / 120.0
        c2 = -1.0 / 3.0 + n2 / 30.0
    else:
        s = math.sin(n) / n
        c2 = (math.cos(n) - s) / (n * n)
    real = Quaternion(math.cos(n), *(s * vr))
    dual = Quaternion(-rd * s, *(s * vd + c2 * rd * vr))
    return DualQuaternion(real, dual)


def _log_derivative(n: float, w: float) -> float:
    """∂/∂n of atan2(n, w)/n, divided by n (series for small n, w > 0)"""
    if n < SERIES_THRESHOLD and w > 0.0:
        z2 = (n / w) ** 2
        return (-2.0 / 3.0 + 4.0 * z2 / 5.0) / (w ** 3)
    return (n * w / (n * n + w * w) - math.atan2(n, w)) / (n ** 3)


def dq_log(a: DualQuaternion) -> DualQuaternion:
    """
    Principal logarithm of a unit dual-quaternion

    Dual extension of the quaternion log: κ̂ = atan2(n̂, ŵ)/n̂ applied to v̂, with the
    near-identity coefficients taken from their series (no division by sin(θ/2) ≈ 0).
    """
    require_unit(a, "dq_log")
    w, vr = a.real.w, a.real.vector
    wd, vd = a.dual.w, a.dual.vector
    n = float(np.linalg.norm(vr))
    if n == 0.0 and w < 0.0:
        if np.any(vd != 0.0):
            raise InvalidArgumentError("dq_log is undefined for q_r = -1 with a non-zero dual vector")
        return DualQuaternion(Quaternion.pure(math.pi, 0.0, 0.0), Quaternion())
    kappa = log_coefficient(n, w)
    rd = float(np.dot(vr, vd))
    kappa_dual = rd * _log_derivative(n, w) - wd / (n * n + w * w)
    real = Quaternion(0.0, *(kappa * vr))
    dual = Quaternion(0.0, *(kappa * vd + kappa_dual * vr))
    return DualQuaternion(real, dual)


def dq_from_rot_trans(r: Quaternion, t) -> DualQuaternion:
    """
    Rigid encoding q_r = r, q_d = ½·(0, t)·r

    Args:
        r: Unit rotation quaternion
        t: Translation 3-vector

    Returns:
        Unit dual-quaternion
    """
    if not r.is_unit():
        raise InvalidArgumentError(f"Rotation is not unit: |r| = {q_norm(r)!r}")
    tx, ty, tz = (float(c) for c in t)
    dual = q_mul(Quaternion.pure(tx, ty, tz), r) * 0.5
    return DualQuaternion(r, dual)


def dq_to_rot_trans(a: DualQuaternion) -> Tuple[Quaternion, np.ndarray]:
    """Inverse of dq_from_rot_trans: r = q_r, t = v(2·q_d·q_r*)"""
    require_unit(a, "dq_to_rot_trans")
    t = q_mul(a.dual, q_conjugate(a.real)) * 2.0
    return a.real, t.vector


def dq_transform_point(a: DualQuaternion, v) -> np.ndarray:
    """
    Transform a 3D point with the sandwich ζ·p·ζ̄, ζ̄ the variant-3 conjugate

    Args:
        a: Unit dual-quaternion
        v: Point 3-vector

    Returns:
        Transformed point R·v + t
    """
    require_unit(a, "dq_transform_point")
    p = DualQuaternion.point(v)
    moved = dq_mul(dq_mul(a, p), dq_conjugate(a, 3))
    return moved.dual.vector
