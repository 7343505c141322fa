# spin_limit_shapes/utils.py

import csv
import hashlib
import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from .errors import ConfigError


def format_fraction(value: Fraction) -> str:
    """'p/q', or just 'p' for integers."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_float(value: float) -> str:
    return f"{float(value):.12f}"


def format_value(value: Any) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, (Fraction, int)):
        return format_fraction(value)
    if isinstance(value, float):
        return format_float(value)
    return str(value)


def exact_columns(name: str, value: Any) -> Dict[str, str]:
    """An exact column plus a '<name>_float' column for rationals."""
    columns = {name: format_value(value)}
    if isinstance(value, Fraction):
        columns[f"{name}_float"] = format_float(value)
    return columns


def _normalise(rows: Sequence[Dict[str, Any]]) -> List[Dict[str, str]]:
    return [{k: format_value(v) for k, v in row.items()} for row in rows]


def write_rows(out_dir: Path, stem: str, rows: Sequence[Dict[str, Any]], fmt: str = "csv") -> Path:
    """Write rows as <stem>.csv or <stem>.json; columns follow the first row."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rows = _normalise(rows)
    if fmt == "csv":
        path = out_dir / f"{stem}.csv"
        columns = list(rows[0].keys()) if rows else []
        with path.open("w", newline="", encoding="utf-8") as f:
            writer = csv.DictWriter(f, fieldnames=columns, lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
    elif fmt == "json":
        path = out_dir / f"{stem}.json"
        write_json(path, rows)
    else:
        raise ConfigError(f"unsupported output format '{fmt}'")
    return path


def write_json(path: Path, payload: Any) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, ensure_ascii=False, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path


def sha256_of(path: Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def write_manifest(out_dir: Path, config: Dict[str, Any], version: str, artifacts: Sequence[Path], status: Optional[str] = None) -> Path:
    """manifest.json: resolved config, package version and a digest per artifact."""
    out_dir = Path(out_dir)
    payload = {
        "version": version,
        "config": config,
        "artifacts": [{"file": Path(a).name, "sha256": sha256_of(a)} for a in artifacts],
    }
    if status is not None:
        payload["status"] = status
    return write_json(out_dir / "manifest.json", payload)
