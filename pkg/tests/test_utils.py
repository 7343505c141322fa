import csv
import hashlib
import json
from fractions import Fraction as F

import pytest

from spin_limit_shapes.errors import ConfigError
from spin_limit_shapes.utils import exact_columns, format_value, write_manifest, write_rows


def test_format_value():
    assert format_value(True) == "true"
    assert format_value(F(3, 2)) == "3/2"
    assert format_value(F(4, 2)) == "2"
    assert format_value(-7) == "-7"
    assert format_value(0.5) == "0.500000000000"
    assert format_value("(3,1)+") == "(3,1)+"


def test_exact_columns():
    assert exact_columns("m", F(1, 3)) == {"m": "1/3", "m_float": "0.333333333333"}
    assert exact_columns("m", 2) == {"m": "2"}


def test_write_rows_csv(tmp_path):
    path = write_rows(tmp_path / "run", "table", [{"n": 1, "g": F(1, 2)}, {"n": 2, "g": 1}])
    assert path.name == "table.csv"
    with path.open(encoding="utf-8") as f:
        rows = list(csv.DictReader(f))
    assert rows == [{"n": "1", "g": "1/2"}, {"n": "2", "g": "1"}]


def test_write_rows_json_and_bad_format(tmp_path):
    path = write_rows(tmp_path, "table", [{"x": 0.25}], fmt="json")
    assert json.loads(path.read_text(encoding="utf-8")) == [{"x": "0.250000000000"}]
    with pytest.raises(ConfigError):
        write_rows(tmp_path, "table", [], fmt="parquet")


def test_manifest_digests(tmp_path):
    artifact = write_rows(tmp_path, "table", [{"n": 1}])
    manifest = write_manifest(tmp_path, {"command": "gcheck"}, "0.1.0", [artifact], "pass")
    payload = json.loads(manifest.read_text(encoding="utf-8"))
    assert payload["status"] == "pass"
    assert payload["artifacts"] == [
        {"file": "table.csv", "sha256": hashlib.sha256(artifact.read_bytes()).hexdigest()}
    ]
