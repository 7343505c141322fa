# spin_limit_shapes/config.py

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Iterable, Mapping, Optional

from .errors import ConfigError

FORMATS = ("csv", "json")

# Keys every command accepts, with their defaults.
GLOBAL_DEFAULTS: Dict[str, Any] = {
    "seed": 0,
    "out": "out",
    "format": "csv",
    "threads": 1,
    "quiet": False,
}

DEFAULTS: Dict[str, Dict[str, Any]] = {
    "enumerate": {"nmax": 10},
    "gcheck": {"nmax": 10},
    "tmeasure": {"partition": "3,1", "rescaled": False},
    "growth-weights": {"nmax": 9},
    "balance": {"nmax": 12},
    "graph": {"nmax": 6},
    "plancherel": {"nmax": 8, "samples": 2000},
    "chartable": {"n": 5},
    "verify-jm": {"n": 5, "k": 2},
    "afactor": {
        "k": "2,3,5",
        "t": 1.0,
        "n": 10000,
        "psi.family": "gamma",
        "psi.params": "2,0.5",
        "method": "auto",
    },
    "simulate": {
        "n": 200,
        "t": 1.0,
        "psi.family": "exponential",
        "psi.params": "1",
        "replicas": 2000,
        "initial": "plancherel",
    },
    "evolve": {"initial": "semicircle", "order": 12, "t": 1.0, "m": 1.0},
    "pde-check": {"order": 10, "random": 5, "spread": 5},
    "vershik": {"kmax": 8, "bounds_kmax": 10},
    "thoma": {"c": Fraction(1), "r": Fraction(1), "order": 12, "n": 10000, "kmax": 9},
    "density": {"points": 401},
    "shape": {"source": "semicircle", "order": 12, "points": 601, "xmax": 3.0},
}

# Alternate command names, each mapped to the DEFAULTS key it runs.
COMMAND_ALIASES: Dict[str, str] = {"lemma27": "growth-weights"}

TRUE_WORDS = ("1", "true", "yes", "on")
FALSE_WORDS = ("0", "false", "no", "off")


@dataclass
class RunConfig:
    """Fully resolved settings of one command run."""

    command: str
    params: Dict[str, Any] = field(default_factory=dict)
    seed: int = 0
    out: str = "out"
    format: str = "csv"
    threads: int = 1
    quiet: bool = False

    def __getitem__(self, key: str) -> Any:
        try:
            return self.params[key]
        except KeyError:
            raise ConfigError(f"'{self.command}' has no parameter '{key}'") from None

    @property
    def out_dir(self) -> Path:
        return Path(self.out)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "params": {k: str(v) if isinstance(v, Fraction) else v for k, v in sorted(self.params.items())},
            "seed": self.seed,
            "out": self.out,
            "format": self.format,
            "threads": self.threads,
            "quiet": self.quiet,
        }


def parse_assignment(text: str) -> tuple:
    """'key=value' → (key, value) with surrounding whitespace removed."""
    key, sep, value = text.partition("=")
    if not sep or not key.strip():
        raise ConfigError(f"expected key=value, got '{text}'")
    return key.strip(), value.strip()


def read_config_file(path: str) -> Dict[str, str]:
    """Plain key=value lines; '#' starts a comment and blank lines are skipped."""
    file = Path(path)
    if not file.is_file():
        raise ConfigError(f"config file not found: {path}")
    values = {}
    for number, line in enumerate(file.read_text(encoding="utf-8").splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            key, value = parse_assignment(line)
        except ConfigError as e:
            raise ConfigError(f"{path}:{number}: {e}") from None
        values[key] = value
    return values


def coerce(key: str, raw: Any, default: Any) -> Any:
    """Convert a raw value to the type of the default."""
    if not isinstance(raw, str):
        return raw
    try:
        if isinstance(default, bool):
            word = raw.lower()
            if word in TRUE_WORDS:
                return True
            if word in FALSE_WORDS:
                return False
            raise ValueError(raw)
        if isinstance(default, int):
            return int(raw)
        if isinstance(default, float):
            return float(raw)
        if isinstance(default, Fraction):
            return Fraction(raw)
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"{key}: cannot read '{raw}' as {type(default).__name__}") from None
    return raw


def resolve(
    command: str,
    file_values: Optional[Mapping[str, str]] = None,
    assignments: Iterable[str] = (),
    flags: Optional[Mapping[str, Any]] = None,
) -> RunConfig:
    """Defaults, then the config file, then --set assignments, then explicit flags."""
    command = COMMAND_ALIASES.get(command, command)
    if command not in DEFAULTS:
        raise ConfigError(f"unknown command '{command}'")
    defaults = {**GLOBAL_DEFAULTS, **DEFAULTS[command]}
    merged: Dict[str, Any] = dict(defaults)

    layers = [dict(file_values or {}), dict(parse_assignment(a) for a in assignments)]
    layers.append({k: v for k, v in (flags or {}).items() if v is not None})
    for layer in layers:
        for key, raw in layer.items():
            if key not in defaults:
                raise ConfigError(f"unknown key '{key}' for '{command}'")
            merged[key] = coerce(key, raw, defaults[key])

    if merged["format"] not in FORMATS:
        raise ConfigError(f"format must be one of {FORMATS}, got '{merged['format']}'")
    if merged["threads"] < 1:
        raise ConfigError(f"threads must be positive, got {merged['threads']}")
    params = {k: v for k, v in merged.items() if k not in GLOBAL_DEFAULTS}
    return RunConfig(
        command,
        params,
        seed=merged["seed"],
        out=merged["out"],
        format=merged["format"],
        threads=merged["threads"],
        quiet=merged["quiet"],
    )
