"""
Motion track ingestion and serialization
Rigid (t,qw,qx,qy,qz,tx,ty,tz) and Euler (t,ax,ay,az) tracks in CSV or JSON
"""

import io
import json
import logging
import math
import re
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, TextIO, Tuple, Union

import numpy as np
import pandas as pd

from algebra import Quaternion, q_norm
from exceptions import InvalidArgumentError, TrackParseError, TrackValidationError

logger = logging.getLogger(__name__)

RIGID_COLUMNS = ['t', 'qw', 'qx', 'qy', 'qz', 'tx', 'ty', 'tz']
EULER_COLUMNS = ['t', 'ax', 'ay', 'az']

INGEST_UNIT_TOLERANCE = 1e-6
SPACING_TOLERANCE = 1e-6
FLOAT_FORMAT = '%.17g'

Source = Union[str, Path, TextIO]


class TrackFormat(str, Enum):
    CSV = "csv"
    JSON = "json"


class TrackKind(str, Enum):
    RIGID = "rigid"
    EULER = "euler"


@dataclass(frozen=True)
class MotionSample:
    t: float
    rotation: Quaternion
    translation: Tuple[float, float, float]


@dataclass(frozen=True)
class EulerSample:
    t: float
    angles: Tuple[float, float, float]


Sample = Union[MotionSample, EulerSample]


def _check_timing(times: np.ndarray) -> float:
    """Validate strictly increasing, uniformly spaced timestamps and return the derived rate"""
    if times.size < 2:
        return 1.0
    steps = np.diff(times)
    backwards = np.flatnonzero(steps <= 0.0)
    if backwards.size:
        index = int(backwards[0]) + 1
        raise TrackValidationError(index, f"timestamp {times[index]!r} is not strictly increasing")
    # Spacing is measured against the first step so the first deviating sample is reported
    reference = steps[0]
    uneven = np.flatnonzero(np.abs(steps - reference) > SPACING_TOLERANCE * reference)
    if uneven.size:
        index = int(uneven[0]) + 1
        raise TrackValidationError(index, f"non-uniform sample spacing (step {steps[uneven[0]]!r}, "
                                          f"expected {reference!r})")
    return (times.size - 1) / (times[-1] - times[0])


@dataclass(frozen=True)
class MotionTrack:
    """
    Ordered, uniformly sampled motion samples of a single kind

    sample_rate is derived from the timestamps unless given explicitly.
    """

    samples: Tuple[Sample, ...]
    sample_rate: Optional[float] = None

    def __post_init__(self):
        samples = tuple(self.samples)
        if not samples:
            raise InvalidArgumentError("A track needs at least one sample")
        first = type(samples[0])
        if first not in (MotionSample, EulerSample):
            raise InvalidArgumentError(f"Unsupported sample type {first.__name__}")
        for index, sample in enumerate(samples):
            if type(sample) is not first:
                raise TrackValidationError(index, "rigid and Euler samples cannot be mixed")
        object.__setattr__(self, "samples", samples)

        derived = _check_timing(self.times())
        rate = derived if self.sample_rate is None else float(self.sample_rate)
        if not math.isfinite(rate) or rate <= 0.0:
            raise InvalidArgumentError(f"Sample rate must be positive, got {self.sample_rate!r}")
        object.__setattr__(self, "sample_rate", rate)

    def __len__(self) -> int:
        return len(self.samples)

    @property
    def kind(self) -> TrackKind:
        return TrackKind.RIGID if isinstance(self.samples[0], MotionSample) else TrackKind.EULER

    @property
    def columns(self) -> List[str]:
        return RIGID_COLUMNS if self.kind == TrackKind.RIGID else EULER_COLUMNS

    def times(self) -> np.ndarray:
        return np.array([s.t for s in self.samples], dtype=np.float64)

    def rotations(self) -> np.ndarray:
        """(M, 4) rotation quaternions of a rigid track, as stored"""
        self._require(TrackKind.RIGID)
        return np.array([s.rotation.as_array() for s in self.samples])

    def translations(self) -> np.ndarray:
        self._require(TrackKind.RIGID)
        return np.array([s.translation for s in self.samples], dtype=np.float64)

    def angles(self) -> np.ndarray:
        self._require(TrackKind.EULER)
        return np.array([s.angles for s in self.samples], dtype=np.float64)

    def to_frame(self) -> pd.DataFrame:
        if self.kind == TrackKind.RIGID:
            values = np.column_stack([self.times(), self.rotations(), self.translations()])
        else:
            values = np.column_stack([self.times(), self.angles()])
        return pd.DataFrame(values, columns=self.columns)

    def _require(self, kind: TrackKind) -> None:
        if self.kind != kind:
            raise InvalidArgumentError(f"Operation needs a {kind.value} track, got {self.kind.value}")


def _line_from_message(message: str) -> int:
    match = re.search(r"line (\d+)", message)
    return int(match.group(1)) if match else 1


def _read_csv(source: Source) -> Tuple[pd.DataFrame, Callable[[int], int]]:
    try:
        frame = pd.read_csv(source, float_precision='round_trip', skip_blank_lines=False)
    except pd.errors.EmptyDataError:
        raise TrackParseError(1, "missing header row") from None
    except pd.errors.ParserError as e:
        raise TrackParseError(_line_from_message(str(e)), "malformed row") from None

    frame.columns = [str(c).strip() for c in frame.columns]
    # Trailing blank lines are tolerated, interior ones are not
    while len(frame) and frame.iloc[-1].isna().all():
        frame = frame.iloc[:-1]
    return frame, lambda row: row + 2


def _read_json(source: Source) -> Tuple[pd.DataFrame, Callable[[int], int]]:
    try:
        if hasattr(source, "read"):
            records = json.load(source)
        else:
            with open(source, "r", encoding="utf-8") as handle:
                records = json.load(handle)
    except json.JSONDecodeError as e:
        raise TrackParseError(e.lineno, f"invalid JSON ({e.msg})") from None

    if not isinstance(records, list) or not all(isinstance(r, dict) for r in records):
        raise TrackParseError(1, "expected an array of row records")
    frame = pd.DataFrame.from_records(records)
    # JSON rows are reported by record number
    return frame, lambda row: row + 1


def _detect_kind(frame: pd.DataFrame, ordered: bool) -> TrackKind:
    columns = list(frame.columns)
    for kind, expected in ((TrackKind.RIGID, RIGID_COLUMNS), (TrackKind.EULER, EULER_COLUMNS)):
        if columns == expected or (not ordered and sorted(columns) == sorted(expected)):
            return kind
    raise TrackParseError(1, f"unexpected columns {columns}; expected {RIGID_COLUMNS} or {EULER_COLUMNS}")


def _numeric_values(frame: pd.DataFrame, line_of: Callable[[int], int]) -> np.ndarray:
    frame = frame.copy()
    for column in frame.columns:
        if not pd.api.types.is_numeric_dtype(frame[column]):
            coerced = pd.to_numeric(frame[column], errors='coerce')
            # Missing cells are reported by the finiteness check below
            invalid = np.flatnonzero((coerced.isna() & frame[column].notna()).to_numpy())
            if invalid.size:
                row = int(invalid[0])
                raise TrackParseError(line_of(row), f"column '{column}' is not numeric ({frame[column].iloc[row]!r})")
            frame[column] = coerced
    values = frame.to_numpy(dtype=np.float64)
    bad = np.argwhere(~np.isfinite(values))
    if bad.size:
        row, col = (int(v) for v in bad[0])
        raise TrackParseError(line_of(row), f"column '{frame.columns[col]}' is missing or not finite")
    return values


def _rigid_samples(values: np.ndarray, line_of: Callable[[int], int],
                   renormalize_input: bool) -> List[MotionSample]:
    samples = []
    for index, row in enumerate(values):
        rotation = Quaternion.from_array(row[1:5])
        n = q_norm(rotation)
        if abs(n - 1.0) > INGEST_UNIT_TOLERANCE:
            if not renormalize_input:
                raise TrackValidationError(index, f"rotation is not unit (|q| = {n!r}, line {line_of(index)})")
            if n <= 1e-12:
                raise TrackValidationError(index, f"rotation is zero and cannot be renormalized (line {line_of(index)})")
            rotation = Quaternion.unit(*row[1:5], renormalize=True)
        samples.append(MotionSample(float(row[0]), rotation, tuple(float(v) for v in row[5:8])))
    return samples


def load_track(source: Source, format: Union[str, TrackFormat] = TrackFormat.CSV,
               renormalize_input: bool = False) -> MotionTrack:
    """
    Parse and validate a motion track

    Args:
        source: Path or open text stream
        format: csv or json
        renormalize_input: Divide non-unit rotations by their modulus instead of rejecting them

    Returns:
        Validated MotionTrack

    Raises:
        TrackParseError: malformed content, with the offending line
        TrackValidationError: invariant violation, with the offending sample index
    """
    format = TrackFormat(format)
    if format == TrackFormat.CSV:
        frame, line_of = _read_csv(source)
    else:
        frame, line_of = _read_json(source)

    kind = _detect_kind(frame, ordered=format == TrackFormat.CSV)
    frame = frame[RIGID_COLUMNS if kind == TrackKind.RIGID else EULER_COLUMNS]
    if frame.empty:
        raise TrackParseError(line_of(0), "track has no samples")
    values = _numeric_values(frame, line_of)

    if kind == TrackKind.RIGID:
        samples = _rigid_samples(values, line_of, renormalize_input)
    else:
        samples = [EulerSample(float(row[0]), tuple(float(v) for v in row[1:4])) for row in values]

    track = MotionTrack(tuple(samples))
    logger.info(f"Loaded {kind.value} track: {len(track)} samples at {track.sample_rate:.6g} Hz")
    return track


def render_track(track: MotionTrack, format: Union[str, TrackFormat] = TrackFormat.CSV) -> str:
    """Serialize a track with 17 significant digits"""
    format = TrackFormat(format)
    frame = track.to_frame()
    if format == TrackFormat.CSV:
        return frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator='\n')
    # json.dumps writes the shortest repr that round-trips each float
    records: List[Dict[str, Any]] = [
        {column: float(value) for column, value in zip(frame.columns, row)}
        for row in frame.to_numpy()
    ]
    return json.dumps(records, indent=2) + '\n'


def write_text(sink: Union[str, Path, TextIO], text: str) -> None:
    if hasattr(sink, "write"):
        sink.write(text)
    else:
        Path(sink).write_text(text, encoding="utf-8")


def save_track(track: MotionTrack, sink: Union[str, Path, TextIO],
               format: Union[str, TrackFormat] = TrackFormat.CSV) -> None:
    """Write a track in the layout load_track reads"""
    write_text(sink, render_track(track, format))
    logger.debug(f"Saved {track.kind.value} track with {len(track)} samples as {TrackFormat(format).value}")


def track_from_text(text: str, format: Union[str, TrackFormat] = TrackFormat.CSV,
                    renormalize_input: bool = False) -> MotionTrack:
    return load_track(io.StringIO(text), format, renormalize_input)


def track_from_records(records: Sequence[Dict[str, float]], renormalize_input: bool = False) -> MotionTrack:
    """Build a track from JSON-style row records"""
    return track_from_text(json.dumps(list(records)), TrackFormat.JSON, renormalize_input)
