"""
Signal I/O for the dqmotion toolkit
Track ingestion/export, track <-> signal encodings, spectrum export and synthetic tracks
"""

from .tracks import (
    MotionSample,
    EulerSample,
    MotionTrack,
    TrackFormat,
    TrackKind,
    RIGID_COLUMNS,
    EULER_COLUMNS,
    load_track,
    save_track,
    render_track,
    track_from_text,
    track_from_records,
    write_text,
)
from .encoding import Encoding, align_hemisphere, track_to_signal, signal_to_track
from .spectrum_export import SPECTRUM_COLUMNS, export_spectrum, render_spectrum, load_spectrum, signed_frequencies
from .synthetic import SyntheticComponent, parse_components, generate_synthetic

__all__ = [
    'MotionSample', 'EulerSample', 'MotionTrack', 'TrackFormat', 'TrackKind',
    'RIGID_COLUMNS', 'EULER_COLUMNS', 'load_track', 'save_track', 'render_track',
    'track_from_text', 'track_from_records', 'write_text',
    'Encoding', 'align_hemisphere', 'track_to_signal', 'signal_to_track',
    'SPECTRUM_COLUMNS', 'export_spectrum', 'render_spectrum', 'load_spectrum', 'signed_frequencies',
    'SyntheticComponent', 'parse_components', 'generate_synthetic',
]
