"""
Error hierarchy for the dqmotion toolkit
Library code raises these; the CLI and the API map them to exit codes / HTTP statuses
"""

from typing import Optional


class DQMotionError(Exception):
    """Base class for every error raised by the toolkit"""


class InvalidArgumentError(DQMotionError, ValueError):
    """An argument violates the documented preconditions"""


class DegenerateInputError(InvalidArgumentError):
    """Real part too small to normalize (|q_r| <= 1e-12)"""


class SideMismatchError(InvalidArgumentError):
    """Inverse transform requested for a spectrum produced on the other side"""


class DegenerateSampleError(DegenerateInputError):
    def __init__(self, index: int, message: Optional[str] = None):
        self.index = index
        super().__init__(message or f"Degenerate sample at index {index}: |q_r| is ~0")


class TrackParseError(InvalidArgumentError):
    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"Line {line}: {message}")


class TrackValidationError(InvalidArgumentError):
    def __init__(self, index: int, message: str):
        self.index = index
        super().__init__(f"Sample {index}: {message}")


class RoundTripError(DQMotionError):
    def __init__(self, max_error: float, bound: float):
        self.max_error = max_error
        self.bound = bound
        super().__init__(f"Reconstruction error {max_error:.3e} exceeds bound {bound:.0e}")
