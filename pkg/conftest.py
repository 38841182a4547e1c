"""
Shared pytest fixtures for the dqmotion test suites
Seeded random generators and independent oracles (matrix representations, double-loop DQFT)
"""

import math

import numpy as np
import pytest

from algebra import DualQuaternion, Quaternion, dq_from_rot_trans
from signal_io import MotionSample, MotionTrack
from spectral import DQSignal


def hamilton(a, b):
    """Plain-Python Hamilton product of two (w, x, y, z) sequences"""
    aw, ax, ay, az = a
    bw, bx, by, bz = b
    return (
        aw * bw - ax * bx - ay * by - az * bz,
        aw * bx + ax * bw + ay * bz - az * by,
        aw * by - ax * bz + ay * bw + az * bx,
        aw * bz + ax * by - ay * bx + az * bw,
    )


def left_matrix(q) -> np.ndarray:
    """4×4 real matrix of left multiplication by q"""
    w, x, y, z = q
    return np.array([
        [w, -x, -y, -z],
        [x, w, -z, y],
        [y, z, w, -x],
        [z, -y, x, w],
    ])


def dq_matrix(a: DualQuaternion) -> np.ndarray:
    """8×8 real matrix of left multiplication by a dual-quaternion"""
    real = left_matrix(a.real.as_array())
    dual = left_matrix(a.dual.as_array())
    return np.block([[real, np.zeros((4, 4))], [dual, real]])


def rotation_matrix(q) -> np.ndarray:
    w, x, y, z = q
    return np.array([
        [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
        [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
        [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
    ])


def homogeneous(r: Quaternion, t) -> np.ndarray:
    """4×4 homogeneous matrix of the rigid transform (r, t)"""
    matrix = np.eye(4)
    matrix[:3, :3] = rotation_matrix(r.as_array())
    matrix[:3, 3] = t
    return matrix


def brute_force_dqft(values: np.ndarray, mu, side: str, inverse: bool = False) -> np.ndarray:
    """Double-loop evaluation of the right/left DQFT and IDQFT sums"""
    length = len(values)
    sign = 1.0 if inverse else -1.0
    out = np.zeros((length, 8))
    for t in range(length):
        acc = [0.0] * 8
        for x in range(length):
            theta = 2.0 * math.pi * x * t / length
            c, s = math.cos(theta), math.sin(theta)
            k = (c, sign * s * mu[0], sign * s * mu[1], sign * s * mu[2])
            for offset in (0, 4):
                part = tuple(values[x, offset:offset + 4])
                product = hamilton(part, k) if side == "right" else hamilton(k, part)
                for i in range(4):
                    acc[offset + i] += product[i]
        out[t] = np.array(acc) / math.sqrt(length)
    return out


def random_unit_quaternion(rng: np.random.Generator) -> Quaternion:
    q = rng.normal(size=4)
    return Quaternion.from_array(q / np.linalg.norm(q))


def random_unit_dq(rng: np.random.Generator, scale: float = 2.0) -> DualQuaternion:
    return dq_from_rot_trans(random_unit_quaternion(rng), rng.uniform(-scale, scale, size=3))


def random_unit_signal(rng: np.random.Generator, length: int) -> DQSignal:
    """Signal of random unit dual-quaternions, built with the Hamilton product above"""
    rows = np.zeros((length, 8))
    for n in range(length):
        r = rng.normal(size=4)
        r /= np.linalg.norm(r)
        t = rng.uniform(-1.0, 1.0, size=3)
        rows[n, :4] = r
        rows[n, 4:] = 0.5 * np.array(hamilton((0.0, *t), tuple(r)))
    return DQSignal(rows)


def random_rigid_track(rng: np.random.Generator, length: int, sample_rate: float = 100.0) -> MotionTrack:
    samples = []
    for n in range(length):
        samples.append(MotionSample(n / sample_rate, random_unit_quaternion(rng),
                                    tuple(float(v) for v in rng.uniform(-1.0, 1.0, size=3))))
    return MotionTrack(tuple(samples), sample_rate)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20251017)


@pytest.fixture
def random_signal(rng):
    def make(length: int) -> DQSignal:
        return DQSignal(rng.normal(size=(length, 8)))
    return make


@pytest.fixture
def identity_csv(tmp_path):
    path = tmp_path / "identity.csv"
    path.write_text("t,qw,qx,qy,qz,tx,ty,tz\n0,1,0,0,0,0,0,0\n0.01,1,0,0,0,0,0,0\n")
    return path
