"""
Core algebra for the dqmotion toolkit
Quaternions, dual-quaternions, exp/log maps, screw coordinates and rigid point transforms
"""

from .quaternion import (
    Quaternion,
    q_mul,
    q_mul_array,
    q_conjugate,
    q_conjugate_array,
    q_norm,
    q_inner,
    q_split,
    q_exp,
    q_log,
    q_from_axis_angle,
    q_to_axis_angle,
    UNIT_TOLERANCE,
    SERIES_THRESHOLD,
)
from .dual_quaternion import (
    DualNumber,
    DualQuaternion,
    dq_add,
    dq_scale,
    dq_mul,
    dq_mul_array,
    dq_inner,
    dq_conjugate,
    dq_magnitude,
    dq_normalize,
    dq_exp,
    dq_log,
    dq_from_rot_trans,
    dq_to_rot_trans,
    dq_transform_point,
)
from .screw import ScrewParameters, screw_from_dq, dq_from_screw

__all__ = [
    'Quaternion', 'q_mul', 'q_mul_array', 'q_conjugate', 'q_conjugate_array', 'q_norm',
    'q_inner', 'q_split', 'q_exp', 'q_log', 'q_from_axis_angle', 'q_to_axis_angle',
    'UNIT_TOLERANCE', 'SERIES_THRESHOLD',
    'DualNumber', 'DualQuaternion', 'dq_add', 'dq_scale', 'dq_mul', 'dq_mul_array', 'dq_inner',
    'dq_conjugate', 'dq_magnitude', 'dq_normalize', 'dq_exp', 'dq_log',
    'dq_from_rot_trans', 'dq_to_rot_trans', 'dq_transform_point',
    'ScrewParameters', 'screw_from_dq', 'dq_from_screw',
]
