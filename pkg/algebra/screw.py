"""
Screw coordinates for unit dual-quaternions
Conversion between (θ, d, l, m) and q_r + q_d ε, including the degenerate identity / pure-translation cases
"""

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from exceptions import InvalidArgumentError
from .quaternion import UNIT_TOLERANCE, Quaternion, q_conjugate, q_mul
from .dual_quaternion import DualQuaternion, require_unit

logger = logging.getLogger(__name__)

# Below this |v(q_r)| the motion is treated as a pure translation
SCREW_DEGENERATE = 1e-12


def _vector(values) -> np.ndarray:
    v = np.asarray(values, dtype=np.float64).reshape(3)
    if not np.all(np.isfinite(v)):
        raise InvalidArgumentError(f"Non-finite vector: {v}")
    return v


@dataclass(frozen=True)
class ScrewParameters:
    """
    Screw form of a rigid motion

    theta: rotation angle in [0, 2π); d: translation along the axis (pitch);
    l: unit line direction; m: line moment p × l.
    """

    theta: float
    d: float
    l: np.ndarray = field(compare=False)
    m: np.ndarray = field(compare=False)

    def __post_init__(self):
        object.__setattr__(self, "theta", float(self.theta))
        object.__setattr__(self, "d", float(self.d))
        object.__setattr__(self, "l", _vector(self.l))
        object.__setattr__(self, "m", _vector(self.m))
        if not (math.isfinite(self.theta) and math.isfinite(self.d)):
            raise InvalidArgumentError("Screw angle and pitch must be finite")

    def validate(self) -> None:
        """Raise InvalidArgumentError unless the screw invariants hold"""
        moving = self.theta != 0.0 or self.d != 0.0
        if moving and abs(float(np.linalg.norm(self.l)) - 1.0) > UNIT_TOLERANCE:
            raise InvalidArgumentError(f"Screw direction must be unit, |l| = {np.linalg.norm(self.l)!r}")
        # Tolerance scales with |m|, which grows like 1/sin(θ/2) for small angles
        if abs(float(np.dot(self.l, self.m))) > UNIT_TOLERANCE * max(1.0, float(np.linalg.norm(self.m))):
            raise InvalidArgumentError("Screw line violates the Plücker condition ⟨l, m⟩ = 0")


def screw_from_dq(a: DualQuaternion) -> ScrewParameters:
    """
    Screw parameters of a unit dual-quaternion

    Args:
        a: Unit dual-quaternion

    Returns:
        ScrewParameters with θ in [0, 2π). Identity maps to (0, 0, +x, 0); a pure translation t
        maps to (0, |t|, t/|t|, 0).
    """
    require_unit(a, "screw_from_dq")
    w, vr = a.real.w, a.real.vector
    wd, vd = a.dual.w, a.dual.vector
    s = float(np.linalg.norm(vr))

    if s < SCREW_DEGENERATE:
        # ±ζ describe the same motion; use the w > 0 representative
        sign = 1.0 if w >= 0.0 else -1.0
        real = a.real * sign
        dual = a.dual * sign
        t = (q_mul(dual, q_conjugate(real)) * 2.0).vector
        d = float(np.linalg.norm(t))
        if d == 0.0:
            return ScrewParameters(0.0, 0.0, np.array([1.0, 0.0, 0.0]), np.zeros(3))
        return ScrewParameters(0.0, d, t / d, np.zeros(3))

    half = math.atan2(s, w)
    theta = 2.0 * half
    l = vr / s
    c = math.cos(half)
    d = -2.0 * wd / s
    m = (vd - l * (0.5 * d * c)) / s
    # Keep m in the plane ⊥ l
    m = m - float(np.dot(m, l)) * l
    return ScrewParameters(theta, d, l, m)


def dq_from_screw(screw: ScrewParameters) -> DualQuaternion:
    """
    Unit dual-quaternion of a screw motion

    cos(θ̂/2) + sin(θ̂/2)·(l + ε m) with the dual angle θ̂ = θ + ε d
    """
    screw.validate()
    half = 0.5 * screw.theta
    s, c = math.sin(half), math.cos(half)
    hd = 0.5 * screw.d
    real = Quaternion(c, *(s * screw.l))
    dual = Quaternion(-hd * s, *(s * screw.m + hd * c * screw.l))
    return DualQuaternion(real, dual)
