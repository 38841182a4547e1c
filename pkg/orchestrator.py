"""
dqmotion pipeline orchestrator
Runs the spectrum, filter, roundtrip, synth and convert pipelines for the CLI and the API
"""

import logging
from datetime import datetime
from typing import Any, Dict, Optional, Union

import numpy as np

from config import parse_cutoff
from exceptions import InvalidArgumentError, TrackValidationError
from filters import FrequencyMask, filter_signal, make_band_pass, make_high_pass, make_low_pass
from signal_io import (
    Encoding,
    MotionTrack,
    TrackKind,
    generate_synthetic,
    parse_components,
    signal_to_track,
    track_to_signal,
)
from spectral import (
    TransformAxis,
    TransformSide,
    dominant_bins,
    dqft,
    dqft_fast,
    idqft,
    idqft_fast,
    kernel_cache,
)

logger = logging.getLogger(__name__)

ORCHESTRATOR_VERSION = '1.0'
ROUNDTRIP_BOUND = 1e-9


def build_mask(length: int, sample_rate: float, low_pass: Optional[str] = None,
               high_pass: Optional[str] = None, band: Optional[str] = None) -> FrequencyMask:
    """
    Build the mask selected by exactly one of low_pass, high_pass, band

    Cutoffs are bin counts or hertz values with an "hz" suffix; band is "lo:hi".
    """
    selected = [v for v in (low_pass, high_pass, band) if v is not None]
    if len(selected) != 1:
        raise InvalidArgumentError("Exactly one of low-pass, high-pass or band must be given")
    if low_pass is not None:
        return make_low_pass(length, parse_cutoff(low_pass, length, sample_rate))
    if high_pass is not None:
        return make_high_pass(length, parse_cutoff(high_pass, length, sample_rate))
    parts = str(band).split(':')
    if len(parts) != 2:
        raise InvalidArgumentError(f"Band must be 'lo:hi', got '{band}'")
    lo, hi = (parse_cutoff(p, length, sample_rate) for p in parts)
    return make_band_pass(length, lo, hi)


class MotionPipelineOrchestrator:
    def __init__(self, workers: int = 1, fast: bool = False):
        """
        Initialize the pipeline orchestrator

        Args:
            workers: Default thread count for the reference transforms
            fast: Use the FFT path by default
        """
        if workers < 1:
            raise InvalidArgumentError(f"workers must be >= 1, got {workers}")
        self.workers = workers
        self.fast = fast
        self.runs = {'spectrum': 0, 'filter': 0, 'roundtrip': 0, 'synth': 0, 'convert': 0}
        logger.info(f"Pipeline orchestrator initialized (workers={workers}, fast={fast})")

    def _options(self, fast: Optional[bool], workers: Optional[int]):
        return self.fast if fast is None else fast, self.workers if workers is None else workers

    def _metadata(self, command: str) -> Dict[str, Any]:
        self.runs[command] += 1
        return {
            'command': command,
            'orchestrator_version': ORCHESTRATOR_VERSION,
            'processed_at': self._get_timestamp(),
        }

    def spectrum(self, track: MotionTrack, encoding: Union[str, Encoding] = Encoding.RIGID,
                 side: Union[str, TransformSide] = TransformSide.RIGHT,
                 axis: Optional[TransformAxis] = None, hemisphere_align: bool = True,
                 top: int = 0, fast: Optional[bool] = None,
                 workers: Optional[int] = None) -> Dict[str, Any]:
        """
        Encode a track and compute its DQFT

        Returns:
            Result dictionary with the spectrum and its dominant frequency distances
        """
        fast, workers = self._options(fast, workers)
        signal = track_to_signal(track, encoding, hemisphere_align)
        axis = axis or TransformAxis.default()
        side = TransformSide(side)
        spectrum = dqft_fast(signal, axis, side) if fast else dqft(signal, axis, side, workers)

        result = {
            'success': True,
            'spectrum': spectrum,
            'dominant_bins': dominant_bins(spectrum, top) if top else [],
            'energy': spectrum.energy(),
        }
        result.update(self._metadata('spectrum'))
        logger.info(f"Spectrum computed: M={len(spectrum)} side={side.value} fast={fast}")
        return result

    def filter(self, track: MotionTrack, low_pass: Optional[str] = None, high_pass: Optional[str] = None,
               band: Optional[str] = None, encoding: Union[str, Encoding] = Encoding.RIGID,
               side: Union[str, TransformSide] = TransformSide.RIGHT,
               axis: Optional[TransformAxis] = None, renormalize: bool = False,
               hemisphere_align: bool = True, fast: Optional[bool] = None,
               workers: Optional[int] = None) -> Dict[str, Any]:
        """
        Filter a track in the frequency domain and decode it back to a track

        Returns:
            Result dictionary with the filtered track and the filter report
        """
        fast, workers = self._options(fast, workers)
        encoding = Encoding(encoding)
        if renormalize and encoding == Encoding.PURE:
            logger.warning("Renormalization applies to rigid encoding only; ignored for pure encoding")
        signal = track_to_signal(track, encoding, hemisphere_align)
        mask = build_mask(len(track), track.sample_rate, low_pass, high_pass, band)
        filtered, report = filter_signal(signal, mask, TransformSide(side), axis,
                                         renormalize=renormalize and encoding == Encoding.RIGID,
                                         fast=fast, workers=workers)
        try:
            output = signal_to_track(filtered, encoding, track.sample_rate, kind=track.kind,
                                     renormalize=False, start_time=track.samples[0].t)
        except TrackValidationError as e:
            if encoding != Encoding.RIGID or renormalize:
                raise
            raise TrackValidationError(e.index, "filtered sample is not a unit dual-quaternion; "
                                                "rerun with --renormalize or the pure encoding") from e

        result = {
            'success': True,
            'track': output,
            'report': report,
        }
        result.update(self._metadata('filter'))
        return result

    def roundtrip(self, track: MotionTrack, encoding: Union[str, Encoding] = Encoding.RIGID,
                  side: Union[str, TransformSide] = TransformSide.RIGHT,
                  axis: Optional[TransformAxis] = None, hemisphere_align: bool = True,
                  fast: Optional[bool] = None, workers: Optional[int] = None) -> Dict[str, Any]:
        """
        Forward then inverse transform; reports the max per-component reconstruction error

        Returns:
            Result dictionary; within_bound is False when the error exceeds 1e-9
        """
        fast, workers = self._options(fast, workers)
        signal = track_to_signal(track, encoding, hemisphere_align)
        axis = axis or TransformAxis.default()
        side = TransformSide(side)
        if fast:
            restored = idqft_fast(dqft_fast(signal, axis, side))
        else:
            restored = idqft(dqft(signal, axis, side, workers), workers)
        max_error = float(np.max(np.abs(restored.samples - signal.samples)))

        result = {
            'success': True,
            'max_error': max_error,
            'bound': ROUNDTRIP_BOUND,
            'within_bound': max_error <= ROUNDTRIP_BOUND,
        }
        result.update(self._metadata('roundtrip'))
        logger.info(f"Round trip M={len(signal)} side={side.value}: max error {max_error:.3e}")
        return result

    def synth(self, length: int, spec: str = "", sample_rate: float = 1.0) -> Dict[str, Any]:
        """Generate a synthetic rigid track from a component spec string"""
        components = parse_components(spec)
        result = {
            'success': True,
            'track': generate_synthetic(length, components, sample_rate),
            'components': len(components),
        }
        result.update(self._metadata('synth'))
        return result

    def convert(self, track: MotionTrack, to_encoding: Optional[Union[str, Encoding]] = None,
                hemisphere_align: bool = True) -> Dict[str, Any]:
        """
        Transcode a track between layouts

        to_encoding pure turns a rigid track into rotation-vector channels (t,ax,ay,az),
        dropping translations; rigid turns rotation-vector channels back into rotations
        with zero translation. None keeps the layout.
        """
        output = track
        if to_encoding is not None:
            target = TrackKind.EULER if Encoding(to_encoding) == Encoding.PURE else TrackKind.RIGID
            if target != track.kind:
                signal = track_to_signal(track, Encoding.PURE, hemisphere_align)
                output = signal_to_track(signal, Encoding.PURE, track.sample_rate, kind=target,
                                         start_time=track.samples[0].t)
                logger.info(f"Converted {track.kind.value} track to {target.value} layout")

        result = {'success': True, 'track': output}
        result.update(self._metadata('convert'))
        return result

    def get_stats(self) -> Dict[str, Any]:
        """Run counters and kernel cache statistics"""
        return {
            'orchestrator_version': ORCHESTRATOR_VERSION,
            'runs': dict(self.runs),
            'cache_stats': kernel_cache.get_stats(),
            'timestamp': self._get_timestamp(),
        }

    def health_check(self) -> Dict[str, Any]:
        """Perform a small forward/inverse self-check"""
        health = {
            'status': 'healthy',
            'timestamp': self._get_timestamp(),
            'orchestrator_version': ORCHESTRATOR_VERSION,
            'components': {},
        }
        try:
            sample_signal = track_to_signal(generate_synthetic(8, parse_components("1:0.1:0.1:0,0,1")))
            restored = idqft_fast(dqft_fast(sample_signal))
            max_error = float(np.max(np.abs(restored.samples - sample_signal.samples)))
            healthy = max_error <= ROUNDTRIP_BOUND
            health['components']['transform'] = {
                'status': 'healthy' if healthy else 'error',
                'max_error': max_error,
            }
            health['components']['kernel_cache'] = {'status': 'healthy', 'stats': kernel_cache.get_stats()}
            if not healthy:
                health['status'] = 'degraded'
        except Exception as e:
            logger.error(f"Health check failed: {str(e)}")
            health['status'] = 'error'
            health['error'] = str(e)
        return health

    def clear_cache(self) -> Dict[str, Any]:
        kernel_cache.clear()
        return {
            'success': True,
            'message': '✅ Cache de kernels limpiado correctamente',
            'timestamp': self._get_timestamp(),
        }

    def _get_timestamp(self) -> str:
        """Get current timestamp in ISO format"""
        return datetime.now().isoformat()
