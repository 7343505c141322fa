import csv
import json

import pytest

from spin_cli import build_parser, main


def _manifest(out):
    return json.loads((out / "manifest.json").read_text(encoding="utf-8"))


def test_parser_knows_every_command():
    args = build_parser().parse_args(["afactor", "--psi-family", "uniform", "--k", "2"])
    assert args.command == "afactor"
    assert getattr(args, "psi.family") == "uniform"
    assert args.k == "2"


@pytest.mark.asyncio
async def test_gcheck_writes_tables_and_manifest(tmp_path):
    assert await main(["gcheck", "--nmax", "6", "--out", str(tmp_path), "--quiet"]) == 0
    manifest = _manifest(tmp_path)
    assert manifest["status"] == "pass"
    assert manifest["config"]["params"] == {"nmax": 6}
    assert [a["file"] for a in manifest["artifacts"]] == ["hook_check.csv"]


@pytest.mark.asyncio
async def test_reruns_are_byte_identical(tmp_path):
    first, second = tmp_path / "a", tmp_path / "b"
    for out in (first, second):
        argv = ["plancherel", "--nmax", "5", "--samples", "200", "--seed", "11", "--out", str(out), "--quiet"]
        assert await main(argv) == 0
    digests = [[a["sha256"] for a in _manifest(out)["artifacts"]] for out in (first, second)]
    assert digests[0] == digests[1]


@pytest.mark.asyncio
@pytest.mark.parametrize(
    "command",
    [
        ["enumerate", "--nmax", "6"],
        ["tmeasure", "--partition", "4,2,1"],
        ["growth-weights", "--nmax", "6"],
        ["balance", "--nmax", "7"],
        ["graph", "--nmax", "5"],
        ["chartable", "--n", "4"],
        ["verify-jm", "--n", "4", "--k", "2"],
        ["afactor", "--k", "1,2"],
        ["evolve", "--initial", "thoma:1/2", "--order", "8"],
        ["pde-check", "--order", "6", "--random", "2"],
        ["vershik", "--kmax", "4", "--bounds-kmax", "6"],
        ["thoma", "--order", "8", "--n", "800"],
        ["density", "--points", "41"],
        ["shape", "--points", "121"],
    ],
)
async def test_commands_pass(tmp_path, command):
    assert await main(command + ["--out", str(tmp_path), "--format", "json", "--quiet"]) == 0
    manifest = _manifest(tmp_path)
    assert manifest["status"] == "pass"
    assert all((tmp_path / a["file"]).suffix == ".json" for a in manifest["artifacts"])


@pytest.mark.asyncio
async def test_simulate_from_delta_start(tmp_path):
    argv = ["simulate", "--n", "6", "--t", "0.3", "--replicas", "12", "--initial", "delta:3,2,1", "--threads", "2"]
    assert await main(argv + ["--out", str(tmp_path), "--quiet"]) == 0
    files = {a["file"] for a in _manifest(tmp_path)["artifacts"]}
    assert files == {"samples.csv", "labels.csv"}


@pytest.mark.asyncio
async def test_config_file_layer(tmp_path):
    config = tmp_path / "run.cfg"
    config.write_text("nmax = 4\n", encoding="utf-8")
    out = tmp_path / "out"
    assert await main(["gcheck", "--config", str(config), "--out", str(out), "--quiet"]) == 0
    assert _manifest(out)["config"]["params"]["nmax"] == 4


@pytest.mark.asyncio
@pytest.mark.parametrize(
    "extra",
    [["--set", "bogus=1"], ["--threads", "0"], ["--nmax", "six"], ["--config", "missing.cfg"]],
)
async def test_configuration_errors_exit_with_2(tmp_path, extra):
    assert await main(["gcheck", "--out", str(tmp_path), "--quiet"] + extra) == 2
    assert not (tmp_path / "manifest.json").exists()


@pytest.mark.asyncio
async def test_domain_errors_exit_with_1(tmp_path):
    argv = ["tmeasure", "--partition", "3,3", "--out", str(tmp_path), "--quiet"]
    assert await main(argv) == 1


@pytest.mark.asyncio
async def test_tmeasure_exports_profile(tmp_path):
    assert await main(["tmeasure", "--partition", "3,1", "--out", str(tmp_path), "--quiet"]) == 0
    profile = json.loads((tmp_path / "profile.json").read_text(encoding="utf-8"))
    assert profile["parts"] == [3, 1]
    assert profile["valleys"] == [-4, -2, 1, 3]
    assert profile["peaks"] == [-3, -1, 2]
    assert [x for x, _ in profile["measure"]["atoms"]] == ["-4", "-2", "1", "3"]


@pytest.mark.asyncio
async def test_lemma27_runs_the_growth_weight_check(tmp_path):
    assert await main(["lemma27", "--nmax", "5", "--out", str(tmp_path), "--quiet"]) == 0
    manifest = _manifest(tmp_path)
    assert manifest["status"] == "pass"
    assert manifest["config"]["command"] == "growth-weights"
    assert [a["file"] for a in manifest["artifacts"]] == ["growth_weights.csv"]


@pytest.mark.asyncio
async def test_evolve_reports_moment_growth(tmp_path):
    argv = ["evolve", "--initial", "random", "--order", "6", "--out", str(tmp_path), "--quiet"]
    assert await main(argv) == 0
    files = [a["file"] for a in _manifest(tmp_path)["artifacts"]]
    assert files == ["evolution.csv", "growth_bound.csv", "series_pair.json"]
    with (tmp_path / "growth_bound.csv").open(encoding="utf-8") as f:
        rows = list(csv.DictReader(f))
    assert [row["k"] for row in rows] == [str(k) for k in range(1, 9)]
    assert all(float(row["ratio"]) <= 1.0 for row in rows)
