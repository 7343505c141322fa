from fractions import Fraction as F

import pytest

from spin_limit_shapes.config import RunConfig, coerce, parse_assignment, read_config_file, resolve
from spin_limit_shapes.errors import ConfigError


def test_defaults():
    config = resolve("gcheck")
    assert config["nmax"] == 10
    assert (config.seed, config.format, config.threads, config.quiet) == (0, "csv", 1, False)


def test_layers_apply_in_order():
    config = resolve(
        "simulate",
        file_values={"n": "50", "replicas": "10", "seed": "3"},
        assignments=["n=60", "psi.family = gamma"],
        flags={"n": "70", "t": None},
    )
    assert config["n"] == 70
    assert config["replicas"] == 10
    assert config["psi.family"] == "gamma"
    assert config["t"] == 1.0
    assert config.seed == 3


def test_command_alias_resolves_to_its_target():
    config = resolve("lemma27", assignments=["nmax=4"])
    assert config.command == "growth-weights"
    assert config["nmax"] == 4


def test_unknown_command_and_key():
    with pytest.raises(ConfigError):
        resolve("bogus")
    with pytest.raises(ConfigError):
        resolve("gcheck", assignments=["nmin=3"])
    with pytest.raises(ConfigError):
        resolve("gcheck")["partition"]


@pytest.mark.parametrize("assignment", ["format=xml", "threads=0", "nmax=ten", "seed=1.5"])
def test_bad_values(assignment):
    with pytest.raises(ConfigError):
        resolve("gcheck", assignments=[assignment])


def test_coerce():
    assert coerce("quiet", "Yes", False) is True
    assert coerce("quiet", "off", True) is False
    assert coerce("n", "12", 0) == 12
    assert coerce("t", "0.25", 1.0) == 0.25
    assert coerce("c", "1/2", F(1)) == F(1, 2)
    assert coerce("initial", "uniform", "plancherel") == "uniform"
    assert coerce("n", 7, 0) == 7
    with pytest.raises(ConfigError):
        coerce("quiet", "maybe", False)
    with pytest.raises(ConfigError):
        coerce("c", "1/0", F(1))


def test_parse_assignment():
    assert parse_assignment(" k = 2,3 ") == ("k", "2,3")
    with pytest.raises(ConfigError):
        parse_assignment("nmax")
    with pytest.raises(ConfigError):
        parse_assignment("=4")


def test_read_config_file(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("# pausing law\npsi.family = uniform\n\npsi.params = 0,2  # support\n", encoding="utf-8")
    assert read_config_file(str(path)) == {"psi.family": "uniform", "psi.params": "0,2"}
    with pytest.raises(ConfigError):
        read_config_file(str(tmp_path / "missing.cfg"))
    path.write_text("nmax 4\n", encoding="utf-8")
    with pytest.raises(ConfigError, match="run.cfg:1"):
        read_config_file(str(path))


def test_run_config_to_dict():
    config = resolve("thoma", assignments=["c=1/2"])
    payload = config.to_dict()
    assert payload["command"] == "thoma"
    assert payload["params"]["c"] == "1/2"
    assert list(payload["params"]) == sorted(payload["params"])
    assert RunConfig("gcheck").out_dir.name == "out"
