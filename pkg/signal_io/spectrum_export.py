"""
Plot-ready spectrum export
One row per bin: signed frequency, magnitudes and the eight raw coefficients
"""

import json
import logging
from pathlib import Path
from typing import Optional, TextIO, Union

import numpy as np
import pandas as pd

from exceptions import InvalidArgumentError, TrackParseError
from spectral import DQSpectrum, TransformAxis, TransformSide
from .tracks import FLOAT_FORMAT, Source, TrackFormat, write_text

logger = logging.getLogger(__name__)

COEFFICIENT_COLUMNS = ['wr', 'xr', 'yr', 'zr', 'wd', 'xd', 'yd', 'zd']
SPECTRUM_COLUMNS = ['bin', 'freq_hz', 'mag8', 'mag_real', 'mag_dual'] + COEFFICIENT_COLUMNS


def signed_frequencies(length: int, sample_rate: float) -> np.ndarray:
    """Bin k maps to k·rate/M for k <= M//2 and to (k - M)·rate/M above"""
    k = np.arange(length)
    signed = np.where(k <= length // 2, k, k - length)
    return signed * sample_rate / length


def spectrum_frame(spectrum: DQSpectrum) -> pd.DataFrame:
    c = spectrum.coefficients
    frame = pd.DataFrame(c, columns=COEFFICIENT_COLUMNS)
    frame.insert(0, 'bin', np.arange(len(spectrum)))
    frame.insert(1, 'freq_hz', signed_frequencies(len(spectrum), spectrum.sample_rate))
    frame.insert(2, 'mag8', np.linalg.norm(c, axis=1))
    frame.insert(3, 'mag_real', np.linalg.norm(c[:, :4], axis=1))
    frame.insert(4, 'mag_dual', np.linalg.norm(c[:, 4:], axis=1))
    return frame


def render_spectrum(spectrum: DQSpectrum, format: Union[str, TrackFormat] = TrackFormat.CSV) -> str:
    format = TrackFormat(format)
    frame = spectrum_frame(spectrum)
    if format == TrackFormat.CSV:
        return frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator='\n')
    records = [
        {column: (int(value) if column == 'bin' else float(value)) for column, value in zip(SPECTRUM_COLUMNS, row)}
        for row in frame.itertuples(index=False)
    ]
    return json.dumps(records, indent=2) + '\n'


def export_spectrum(spectrum: DQSpectrum, sink: Union[str, Path, TextIO],
                    format: Union[str, TrackFormat] = TrackFormat.CSV) -> None:
    """
    Write a spectrum for plotting

    Args:
        spectrum: Spectrum to export
        sink: Path or open text stream
        format: csv or json
    """
    write_text(sink, render_spectrum(spectrum, format))
    logger.info(f"Exported {len(spectrum)}-bin {spectrum.side.value} spectrum as {TrackFormat(format).value}")


def load_spectrum(source: Source, format: Union[str, TrackFormat] = TrackFormat.CSV,
                  side: Union[str, TransformSide] = TransformSide.RIGHT,
                  axis: Optional[TransformAxis] = None,
                  sample_rate: Optional[float] = None) -> DQSpectrum:
    """
    Reparse an exported spectrum

    Side and axis are not part of the export and must be supplied. The sample rate is
    recovered from the bin-1 frequency when not given.
    """
    format = TrackFormat(format)
    if format == TrackFormat.CSV:
        frame = pd.read_csv(source, float_precision='round_trip')
    elif hasattr(source, "read"):
        frame = pd.DataFrame.from_records(json.load(source))
    else:
        with open(source, "r", encoding="utf-8") as handle:
            frame = pd.DataFrame.from_records(json.load(handle))

    missing = [c for c in SPECTRUM_COLUMNS if c not in frame.columns]
    if missing:
        raise TrackParseError(1, f"spectrum is missing columns {missing}")
    if frame.empty:
        raise InvalidArgumentError("Spectrum has no bins")

    frame = frame.sort_values('bin', kind='stable')
    length = len(frame)
    bins = pd.to_numeric(frame['bin'], errors='coerce').to_numpy(dtype=np.float64)
    wrong = np.flatnonzero(bins != np.arange(length))
    if wrong.size:
        position = wrong[0]
        offset = 2 if format == TrackFormat.CSV else 1
        raise TrackParseError(int(frame.index[position]) + offset,
                              f"expected bin {position} of 0..{length - 1}, got {frame['bin'].iloc[position]!r}")
    if sample_rate is None:
        sample_rate = float(frame['freq_hz'].iloc[1]) * length if length > 1 else 1.0
    return DQSpectrum(frame[COEFFICIENT_COLUMNS].to_numpy(dtype=np.float64), side,
                      axis or TransformAxis.default(), sample_rate)
