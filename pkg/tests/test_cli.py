import csv
import json

import pytest

from impartial.cli import main


def _run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_check_impartial_avd_passes(capsys):
    code, out = _run(capsys, "check-impartial", "--mechanism", '{"kind":"avd_beats","default":0}', "--m", "4")
    assert code == 0
    data = json.loads(out.out)
    assert data["verdict"] == "pass" and data["profiles_checked"] == 4096
    assert data["config"]["mechanism"] == {"kind": "avd_beats", "default": 0}


def test_check_impartial_approval_fails_with_counterexample(capsys):
    code, out = _run(capsys, "check-impartial", "--mechanism", '{"kind":"approval"}', "--m", "3")
    assert code == 2
    data = json.loads(out.out)
    assert data["verdict"] == "fail"
    assert data["counterexample"]["deviator"] in (0, 1, 2)
    assert data["counterexample_reverified"] is True


def test_check_impartial_random_mode(capsys):
    code, out = _run(capsys, "check-impartial", "--mechanism", '{"kind":"avd_tie","default":0}',
                     "--random", "--prior", '{"kind":"uniform","m":6,"p":0.5}',
                     "--trials", "5000", "--seed", "3")
    assert code == 2
    assert json.loads(out.out)["config"]["mode"] == "random"


def test_bounds_tails_lists_margins(capsys, tmp_path):
    out = tmp_path / "report.json"
    code, _ = _run(capsys, "bounds", "verify", "--suite", "tails", "--n", "100", "--p", "0.5", "--out", str(out))
    assert code == 0
    data = json.loads(out.read_text())
    assert data["holds"] and data["points"]
    assert all("margin" in row for row in data["points"])
    assert data["config"]["suite"] == "tails"


def test_bounds_precondition_is_a_usage_error(capsys):
    code, out = _run(capsys, "bounds", "verify", "--suite", "technical", "--n", "1000", "--p", "0.5")
    assert code == 1 and "8200" in out.err


def test_two_node_suite(capsys):
    code, out = _run(capsys, "bounds", "verify", "--suite", "two-node", "--p", "0.1", "0.01", "--summary")
    assert code == 0
    assert "points" not in json.loads(out.out)


def test_simulate_embeds_config_and_round_trips(capsys, tmp_path):
    first = tmp_path / "a.json"
    second = tmp_path / "b.json"
    code, _ = _run(capsys, "simulate", "--prior", '{"kind":"uniform","m":40,"p":0.5}',
                   "--mechanism", '{"kind":"avd_beats"}', "--trials", "100", "--seed", "5", "--out", str(first))
    assert code == 0
    data = json.loads(first.read_text())
    assert data["config"]["seed"] == 5 and data["config"]["prior"]["m"] == 40
    code, _ = _run(capsys, "simulate", "--config", str(first), "--out", str(second))
    assert code == 0
    assert first.read_bytes() == second.read_bytes()


def test_simulate_default_override(capsys):
    code, out = _run(capsys, "simulate", "--prior", '{"kind":"block_correlated","k":2}',
                     "--mechanism", '{"kind":"avd_tie"}', "--default", "2", "--trials", "200", "--seed", "1")
    assert code == 0
    assert json.loads(out.out)["config"]["mechanism"]["default"] == 2


def test_sweep_writes_csv_and_config(capsys, tmp_path):
    out = tmp_path / "sweep.csv"
    code, _ = _run(capsys, "sweep", "--prior-family", '{"kind":"uniform","p":0.5}',
                   "--mechanism-rule", '{"kind":"constant"}', "--n", "16,64",
                   "--trials", "20", "--seed", "1", "--out", str(out))
    assert code == 0
    rows = list(csv.DictReader(out.open()))
    assert [r["n"] for r in rows] == ["16", "64"]
    config = json.loads((tmp_path / "sweep.csv.config.json").read_text())
    assert config["seed"] == 1 and config["n"] == [16, 64]


def test_zones_and_hazard(capsys):
    code, out = _run(capsys, "zones", "--n", "10000", "--p", "0.5")
    assert code == 0
    z = json.loads(out.out)
    assert z["L"] < 5000 < z["U"]
    code, out = _run(capsys, "hazard", "--n", "10", "--p", "0.5", "--x", "5")
    assert code == 0
    assert json.loads(out.out)["hazard"][0]["ratio"] == pytest.approx(252 / 638)


@pytest.mark.parametrize("argv", [
    ["frobnicate"],
    ["check-impartial", "--mechanism", "{not json", "--m", "3"],
    ["check-impartial", "--mechanism", '{"kind":"plurality"}', "--m", "3"],
    ["check-impartial", "--mechanism", '{"kind":"constant","default":0}', "--m", "9"],
    ["simulate", "--prior", '{"kind":"uniform","m":4,"p":0.5}'],
    ["zones", "--n", "100", "--p", "0.5", "--out", "/nonexistent-dir/z.json"],
    ["hazard", "--n", "10", "--p", "0.5", "--x", "11"],
])
def test_usage_errors_exit_1(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        raise SystemExit(main(argv))
    assert exc.value.code == 1


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "impartial", "hazard", "--n", "4", "--p", "0.5", "--x", "4"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["hazard"][0]["ratio"] == pytest.approx(1.0)
