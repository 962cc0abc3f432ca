"""Run configuration: unit parsing, JSON round-trip and validation."""

from dataclasses import asdict, dataclass, fields
from decimal import Decimal
import json
import math
import re

_UNITS = {"nm": "1e-9", "um": "1e-6", "µm": "1e-6", "mm": "1e-3", "cm": "1e-2", "m": "1"}
_LENGTH_RE = re.compile(r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*(nm|um|µm|mm|cm|m)?\s*$")

COMMANDS = (
    "imaging-carpet",
    "litho-carpet",
    "classical-carpet",
    "planes",
    "magnify",
    "singles",
    "verify-oracle",
)
VERIFY_SETS = ("imaging", "litho", "classical", "singles")


class ConfigError(ValueError):
    """A configuration value failed validation; ``key`` names the flag."""

    def __init__(self, key, message):
        super().__init__(f"--{key}: {message}")
        self.key = key


def parse_length(text):
    """Parse ``'0.1mm'``, ``'100um'`` or bare meters ``'1e-4'`` into meters."""
    if isinstance(text, (int, float)) and not isinstance(text, bool):
        value = float(text)
    else:
        match = _LENGTH_RE.match(str(text))
        if not match:
            raise ValueError(f"not a length: {text!r} (use a number with nm, um, mm, cm or m)")
        # exact decimal scaling, so '100um', '0.1mm' and '1e-4' give the same double
        value = float(Decimal(match.group(1)) * Decimal(_UNITS[match.group(2) or "m"]))
    if not math.isfinite(value):
        raise ValueError(f"not a finite length: {text!r}")
    return value


@dataclass
class RunConfig:
    """Every knob of a CLI run; keys mirror the long flag names."""

    command: str = "imaging-carpet"
    period: float = 1e-4
    duty: float = 0.5
    harmonics: int = 50
    lambda_s: float = 883.2e-9
    lambda_i: float = 883.2e-9
    ds1: float = 0.11
    ds2: float = 0.20
    di: float | None = None
    x1: float = 0.0
    z_min: float | None = None
    z_max: float | None = None
    x_min: float = -3e-4
    x_max: float = 3e-4
    nx: int = 241
    nz: int | None = None
    scan_mode: str = "fixed"
    kind: str = "imaging"
    out: str | None = None
    format: str = "csv"
    window_periods: int = 128
    samples_per_period: int | None = None
    verify_set: str = "all"
    jobs: int = 1

    LENGTH_KEYS = ("period", "lambda_s", "lambda_i", "ds1", "ds2", "di", "x1", "z_min", "z_max", "x_min", "x_max")
    INT_KEYS = ("harmonics", "nx", "nz", "window_periods", "samples_per_period", "jobs")

    @staticmethod
    def flag_name(key):
        return "set" if key == "verify_set" else key.replace("_", "-")

    @classmethod
    def key_from_flag(cls, name):
        name = name.lstrip("-")
        if name == "set":
            return "verify_set"
        return name.replace("-", "_")

    @classmethod
    def coerce(cls, key, value):
        """Convert a raw (string or JSON) value for ``key``; raises ConfigError."""
        if value is None:
            return None
        flag = cls.flag_name(key)
        try:
            if key in cls.LENGTH_KEYS:
                return parse_length(value)
            if key in cls.INT_KEYS:
                if isinstance(value, float) and not value.is_integer():
                    raise ValueError(f"expected an integer, got {value!r}")
                return int(value)
            if key == "duty":
                return float(value)
        except (TypeError, ValueError) as exc:
            raise ConfigError(flag, str(exc)) from None
        return str(value)

    @classmethod
    def from_mapping(cls, mapping, base=None):
        """Overlay ``mapping`` (flag-style or underscore keys) onto ``base``."""
        cfg = base if base is not None else cls()
        known = {f.name for f in fields(cls)}
        for raw_key, value in mapping.items():
            key = cls.key_from_flag(raw_key)
            if key not in known:
                raise ConfigError(raw_key, "unknown configuration key")
            setattr(cfg, key, cls.coerce(key, value))
        return cfg

    def to_mapping(self):
        return {self.flag_name(k): v for k, v in asdict(self).items()}

    def to_json(self):
        return json.dumps(self.to_mapping(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        if not isinstance(data, dict):
            raise ConfigError("config", "JSON config must be an object")
        return cls.from_mapping(data)

    def validate(self):
        """Check ranges; raise :class:`ConfigError` naming the first bad flag."""
        if self.command not in COMMANDS:
            raise ConfigError("command", f"unknown command {self.command!r}")
        for key in ("period", "lambda_s", "lambda_i", "ds2"):
            if getattr(self, key) <= 0:
                raise ConfigError(self.flag_name(key), "must be positive")
        if self.ds1 < 0:
            raise ConfigError("ds1", "must be non-negative")
        if self.di is not None and self.di < 0:
            raise ConfigError("di", "must be non-negative")
        if not 0.0 <= self.duty <= 1.0:
            raise ConfigError("duty", f"must lie in [0, 1], got {self.duty}")
        for key in ("harmonics", "nx", "nz", "window_periods", "jobs"):
            if getattr(self, key) is not None and getattr(self, key) < 1:
                raise ConfigError(self.flag_name(key), "must be >= 1")
        if self.samples_per_period is not None and self.samples_per_period < 16:
            raise ConfigError("samples-per-period", "must be >= 16")
        if self.x_max < self.x_min or (self.x_max == self.x_min and self.nx > 1):
            raise ConfigError("x-max", "x range must be well ordered")
        if self.z_min is not None and self.z_min < 0:
            raise ConfigError("z-min", "must be non-negative")
        if self.z_min is not None and self.z_max is not None:
            if self.z_max < self.z_min or (self.z_max == self.z_min and (self.nz or 2) > 1):
                raise ConfigError("z-max", "z range must be well ordered")
        if self.scan_mode not in ("fixed", "fixed-signal", "fixed-one", "synchronous"):
            raise ConfigError("scan-mode", f"unknown scan mode {self.scan_mode!r}")
        if self.kind not in ("imaging", "litho"):
            raise ConfigError("kind", f"must be imaging or litho, got {self.kind!r}")
        if self.format not in ("csv", "pgm"):
            raise ConfigError("format", f"must be csv or pgm, got {self.format!r}")
        if self.verify_set not in VERIFY_SETS + ("all",):
            raise ConfigError("set", f"must be one of {', '.join(VERIFY_SETS)} or all")
        if self.command == "magnify" and self.di is None:
            raise ConfigError("di", "magnify needs the idler distance")
        return self
