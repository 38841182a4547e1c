"""
Configuration for the dqmotion command-line pipelines
CliConfig model, cutoff parsing and optional KEY=VALUE config files
"""

import logging
import math
from pathlib import Path
from typing import Any, Dict, Literal, Optional, Tuple

from dotenv import dotenv_values
from pydantic import BaseModel, Field, field_validator, model_validator

from exceptions import InvalidArgumentError
from signal_io import Encoding, TrackFormat
from spectral import TransformAxis, TransformSide

logger = logging.getLogger(__name__)

COMMANDS = ('spectrum', 'filter', 'roundtrip', 'synth', 'convert')
LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL')


def parse_cutoff(value: str, length: int, sample_rate: float) -> int:
    """
    Convert a cutoff to a bin distance

    Bare integers are bins; a "hz" suffix converts with half-up rounding,
    bin = floor(hz·M/sample_rate + ½).
    """
    text = str(value).strip().lower()
    if text.endswith("hz"):
        try:
            hz = float(text[:-2])
        except ValueError:
            raise InvalidArgumentError(f"Invalid frequency cutoff '{value}'") from None
        if not math.isfinite(hz) or hz < 0.0:
            raise InvalidArgumentError(f"Frequency cutoff must be non-negative, got '{value}'")
        return int(math.floor(hz * length / sample_rate + 0.5))
    try:
        bins = int(text)
    except ValueError:
        raise InvalidArgumentError(f"Invalid bin cutoff '{value}' (use an integer or a value with 'hz')") from None
    if bins < 0:
        raise InvalidArgumentError(f"Bin cutoff must be non-negative, got {bins}")
    return bins


def _check_cutoff_text(value: Optional[str]) -> Optional[str]:
    if value is None:
        return None
    # Length and rate are unknown here; any positive values validate the syntax
    parse_cutoff(value, 1, 1.0)
    return str(value).strip()


class CliConfig(BaseModel):
    """Every option of the batch pipelines; flags override config-file values"""

    command: Literal['spectrum', 'filter', 'roundtrip', 'synth', 'convert']
    input: Optional[str] = None
    output: Optional[str] = None
    input_format: Optional[TrackFormat] = None
    format: Optional[TrackFormat] = None
    side: TransformSide = TransformSide.RIGHT
    axis: Tuple[float, float, float] = (1.0, 1.0, 1.0)
    encoding: Encoding = Encoding.RIGID
    low_pass: Optional[str] = None
    high_pass: Optional[str] = None
    band: Optional[str] = None
    renormalize: bool = False
    renormalize_input: bool = False
    fast: bool = False
    workers: int = Field(1, ge=1)
    spec: str = ""
    length: Optional[int] = Field(None, ge=1)
    sample_rate: float = Field(1.0, gt=0.0)
    to_encoding: Optional[Encoding] = None
    hemisphere_align: bool = True
    top: int = Field(0, ge=0)
    log_level: str = "WARNING"

    @field_validator('axis', mode='before')
    @classmethod
    def split_axis(cls, value: Any) -> Any:
        if isinstance(value, str):
            return tuple(part.strip() for part in value.split(','))
        return value

    @field_validator('axis')
    @classmethod
    def normalize_axis(cls, value: Tuple[float, float, float]) -> Tuple[float, float, float]:
        return tuple(float(v) for v in TransformAxis.from_vector(value).vector)

    @field_validator('low_pass', 'high_pass')
    @classmethod
    def check_cutoff(cls, value: Optional[str]) -> Optional[str]:
        return _check_cutoff_text(value)

    @field_validator('band')
    @classmethod
    def check_band(cls, value: Optional[str]) -> Optional[str]:
        if value is None:
            return None
        parts = str(value).split(':')
        if len(parts) != 2:
            raise ValueError(f"Band must be 'lo:hi', got '{value}'")
        lo, hi = (_check_cutoff_text(p) for p in parts)
        if not lo.lower().endswith('hz') and not hi.lower().endswith('hz') and int(lo) > int(hi):
            raise ValueError(f"Band lower edge {lo} exceeds upper edge {hi}")
        return f"{lo}:{hi}"

    @field_validator('log_level')
    @classmethod
    def check_log_level(cls, value: str) -> str:
        level = str(value).upper()
        if level not in LOG_LEVELS:
            raise ValueError(f"log_level must be one of {LOG_LEVELS}")
        return level

    @model_validator(mode='after')
    def check_command(self) -> 'CliConfig':
        if self.command != 'synth' and not self.input:
            raise ValueError(f"'{self.command}' needs --input")
        if self.command in ('spectrum', 'filter', 'synth', 'convert') and not self.output:
            raise ValueError(f"'{self.command}' needs --output")
        if self.command == 'synth' and self.length is None:
            raise ValueError("'synth' needs --length")
        if self.command == 'filter':
            selected = [n for n in ('low_pass', 'high_pass', 'band') if getattr(self, n) is not None]
            if len(selected) != 1:
                raise ValueError("'filter' needs exactly one of --low-pass, --high-pass, --band")
        return self

    @property
    def transform_axis(self) -> TransformAxis:
        return TransformAxis.from_vector(self.axis)

    def resolved_input_format(self) -> TrackFormat:
        return self.input_format or _format_from_suffix(self.input)

    def resolved_output_format(self) -> TrackFormat:
        return self.format or _format_from_suffix(self.output)


def _format_from_suffix(path: Optional[str]) -> TrackFormat:
    if path and Path(path).suffix.lower() == '.json':
        return TrackFormat.JSON
    return TrackFormat.CSV


def load_config_file(path: str) -> Dict[str, str]:
    """
    Read KEY=VALUE options; keys are flag names with dashes or underscores

    Args:
        path: Config file path

    Returns:
        Options keyed by CliConfig field name
    """
    if not Path(path).is_file():
        raise FileNotFoundError(f"Config file not found: {path}")
    values = dotenv_values(path)
    options = {}
    for key, value in values.items():
        name = key.strip().lower().lstrip('-').replace('-', '_')
        if name not in CliConfig.model_fields:
            raise InvalidArgumentError(f"Unknown option '{key}' in {path}")
        if value is not None:
            options[name] = value
    logger.debug(f"Loaded {len(options)} options from {path}")
    return options


def build_config(command: str, overrides: Dict[str, Any], config_path: Optional[str] = None) -> CliConfig:
    """Merge config-file options with command-line overrides (None means not given)"""
    options: Dict[str, Any] = load_config_file(config_path) if config_path else {}
    options.update({k: v for k, v in overrides.items() if v is not None})
    options['command'] = command
    return CliConfig(**options)
