"""
dqmotion batch command line
spectrum, filter, roundtrip, synth and convert pipelines over motion track files
"""

import argparse
import logging
import os
import sys
import tempfile
from pathlib import Path
from typing import Callable, List, Optional

from pydantic import ValidationError

from config import CliConfig, build_config
from exceptions import DegenerateSampleError, InvalidArgumentError, RoundTripError
from orchestrator import MotionPipelineOrchestrator
from signal_io import MotionTrack, load_track, render_spectrum, render_track

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INVALID = 2
EXIT_IO = 3
EXIT_DEGENERATE = 4
EXIT_ROUNDTRIP = 5


def _atomic_write(path: str, text: str) -> None:
    """Write through a temporary sibling file so a failed run leaves no partial output"""
    target = Path(path)
    fd, temporary = tempfile.mkstemp(dir=str(target.parent), prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, 'w', encoding='utf-8', newline='') as handle:
            handle.write(text)
        os.replace(temporary, target)
    except BaseException:
        if os.path.exists(temporary):
            os.unlink(temporary)
        raise


def _diagnostic(command: str, message: str) -> None:
    print(f"❌ {command}: {message}", file=sys.stderr)


def _guarded(command: str, action: Callable[[], int]) -> int:
    """Run a command and map domain errors to exit codes"""
    try:
        return action()
    except DegenerateSampleError as e:
        _diagnostic(command, str(e))
        return EXIT_DEGENERATE
    except RoundTripError as e:
        _diagnostic(command, str(e))
        return EXIT_ROUNDTRIP
    except (InvalidArgumentError, ValidationError, ValueError) as e:
        _diagnostic(command, str(e))
        return EXIT_INVALID
    except OSError as e:
        _diagnostic(command, f"I/O error: {e}")
        return EXIT_IO
    except Exception as e:
        logger.exception(f"Unexpected failure in {command}")
        _diagnostic(command, f"unexpected error: {e}")
        return EXIT_FAILURE


def _orchestrator(config: CliConfig) -> MotionPipelineOrchestrator:
    return MotionPipelineOrchestrator(workers=config.workers, fast=config.fast)


def _load_input(config: CliConfig) -> MotionTrack:
    return load_track(config.input, config.resolved_input_format(), config.renormalize_input)


def cmd_spectrum(config: CliConfig) -> int:
    """Write the DQFT spectrum of the input track"""
    def run() -> int:
        result = _orchestrator(config).spectrum(
            _load_input(config), config.encoding, config.side, config.transform_axis,
            config.hemisphere_align, config.top,
        )
        _atomic_write(config.output, render_spectrum(result['spectrum'], config.resolved_output_format()))
        for distance, energy in result['dominant_bins']:
            print(f"distance={distance} energy={energy:.17g}")
        return EXIT_OK
    return _guarded('spectrum', run)


def cmd_filter(config: CliConfig) -> int:
    """Filter the input track and write the result plus a report line"""
    def run() -> int:
        result = _orchestrator(config).filter(
            _load_input(config), low_pass=config.low_pass, high_pass=config.high_pass, band=config.band,
            encoding=config.encoding, side=config.side, axis=config.transform_axis,
            renormalize=config.renormalize, hemisphere_align=config.hemisphere_align,
        )
        _atomic_write(config.output, render_track(result['track'], config.resolved_output_format()))
        print(result['report'].summary())
        return EXIT_OK
    return _guarded('filter', run)


def cmd_roundtrip(config: CliConfig) -> int:
    """Print the max reconstruction error of forward + inverse; exit 5 above 1e-9"""
    def run() -> int:
        result = _orchestrator(config).roundtrip(
            _load_input(config), config.encoding, config.side, config.transform_axis, config.hemisphere_align,
        )
        print(f"max_error={result['max_error']:.17g}")
        if not result['within_bound']:
            raise RoundTripError(result['max_error'], result['bound'])
        return EXIT_OK
    return _guarded('roundtrip', run)


def cmd_synth(config: CliConfig) -> int:
    def run() -> int:
        result = _orchestrator(config).synth(config.length, config.spec, config.sample_rate)
        _atomic_write(config.output, render_track(result['track'], config.resolved_output_format()))
        return EXIT_OK
    return _guarded('synth', run)


def cmd_convert(config: CliConfig) -> int:
    def run() -> int:
        result = _orchestrator(config).convert(_load_input(config), config.to_encoding, config.hemisphere_align)
        _atomic_write(config.output, render_track(result['track'], config.resolved_output_format()))
        return EXIT_OK
    return _guarded('convert', run)


COMMANDS = {
    'spectrum': cmd_spectrum,
    'filter': cmd_filter,
    'roundtrip': cmd_roundtrip,
    'synth': cmd_synth,
    'convert': cmd_convert,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('-i', '--input', help='input track (csv or json)')
    common.add_argument('-o', '--output', help='output file')
    common.add_argument('--input-format', choices=['csv', 'json'], help='input format (default: from extension)')
    common.add_argument('--format', choices=['csv', 'json'], help='output format (default: from extension)')
    common.add_argument('--side', choices=['left', 'right'], help='transform side (default: right)')
    common.add_argument('--axis', help='transform axis "x,y,z" (default: 1,1,1)')
    common.add_argument('--encoding', choices=['rigid', 'pure'], help='signal encoding (default: rigid)')
    common.add_argument('--fast', action='store_true', default=None, help='use the FFT path')
    common.add_argument('--workers', type=int, help='threads for the reference transform (default: 1)')
    common.add_argument('--renormalize-input', action='store_true', default=None,
                        help='renormalize non-unit input rotations instead of rejecting them')
    common.add_argument('--no-hemisphere-align', dest='hemisphere_align', action='store_const', const=False,
                        default=None, help='keep rotation signs as given')
    common.add_argument('--log-level', help='DEBUG, INFO, WARNING (default), ERROR')
    common.add_argument('--config', help='KEY=VALUE options file; flags override it')

    parser = argparse.ArgumentParser(prog='dqmotion', description='Dual-quaternion spectral processing of motion tracks')
    commands = parser.add_subparsers(dest='command', required=True)

    spectrum = commands.add_parser('spectrum', parents=[common], help='write the DQFT spectrum')
    spectrum.add_argument('--top', type=int, help='print the N dominant frequency distances')

    filter_parser = commands.add_parser('filter', parents=[common], help='frequency-domain filtering')
    filter_parser.add_argument('--low-pass', help='cutoff in bins, or hertz with an "hz" suffix; with rigid encoding a '
                               'narrow pass band such as 0 needs --renormalize')
    filter_parser.add_argument('--high-pass', help='cutoff in bins, or hertz with an "hz" suffix')
    filter_parser.add_argument('--band', help='band "lo:hi" in bins or hertz')
    filter_parser.add_argument('--renormalize', action='store_true', default=None,
                               help='project the output onto valid rigid motions (rigid encoding); without it '
                                    'non-unit filtered samples exit with code 2')

    commands.add_parser('roundtrip', parents=[common], help='check forward + inverse reconstruction')

    synth = commands.add_parser('synth', parents=[common], help='generate a synthetic track')
    synth.add_argument('--spec', help='components "b:rotAmp:transAmp:ax,ay,az;..."')
    synth.add_argument('--length', type=int, help='number of frames')
    synth.add_argument('--sample-rate', type=float, help='frames per second (default: 1)')

    convert = commands.add_parser('convert', parents=[common], help='transcode csv/json and rigid/pure layouts')
    convert.add_argument('--to-encoding', choices=['rigid', 'pure'], help='target layout')
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = vars(build_parser().parse_args(argv))
    command = args.pop('command')
    config_path = args.pop('config')

    # Level is refined once the options are validated
    logging.basicConfig(
        level=logging.WARNING,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
    )

    try:
        config = build_config(command, args, config_path)
    except (ValidationError, InvalidArgumentError) as e:
        _diagnostic(command, str(e))
        return EXIT_INVALID
    except OSError as e:
        _diagnostic(command, f"I/O error: {e}")
        return EXIT_IO

    logging.getLogger().setLevel(config.log_level)
    logger.debug(f"Running {command} with {config.model_dump()}")
    return COMMANDS[command](config)


if __name__ == "__main__":
    sys.exit(main())
