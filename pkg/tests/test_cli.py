import csv
import io
import json
import subprocess
import sys

import jsonschema
import pytest

from convexity_radius.cli import RunConfig, UsageError, main, parse_range, run
from convexity_radius.radii import FORMULAS, RADIUS_RESULT_SCHEMA
from convexity_radius.verifier import VERIFICATION_REPORT_SCHEMA

HALF_GAMMA_TWO = {
    "id": "half-plane-gamma-2",
    "fs": [{"catalog": "half_plane", "class": {"tag": "convex"}}],
    "gammas": [[2, 0]],
    "M": 2,
}


def call(argv):
    """Run the CLI in-process; returns the exit status (argparse exits included)."""
    try:
        return main(argv)
    except SystemExit as exc:
        return exc.code


@pytest.fixture
def scenario_file(tmp_path):
    path = tmp_path / "s.json"
    path.write_text(json.dumps(HALF_GAMMA_TWO))
    return path


def test_radius_json(capsys):
    assert call(["radius", "--formula", "thm21", "--alpha", "1", "--M", "1"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["radius"] == 0.3333333333333333 and out["formula"] == "thm21"


def test_radius_numbers_round_trip(capsys):
    assert call(["radius", "--formula", "thm21", "--alpha", "2", "--M", "1"]) == 0
    text = capsys.readouterr().out
    r = json.loads(text)["radius"]
    assert r == pytest.approx((7**0.5 - 2) / 3, abs=1e-15)
    assert repr(r) in text


def test_radius_csv(capsys):
    assert call(["radius", "--formula", "thm23", "--beta", "1", "--M", "1", "--format", "csv"]) == 0
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert rows[0] == ["radius", "quadratic_a", "quadratic_b", "quadratic_c"]
    assert float(rows[1][0]) == 0.5


def test_sweep_example(capsys):
    assert call(["sweep", "--formula", "thm23", "--beta", "1", "--M", "0.5:2.0:0.5"]) == 0
    raw = capsys.readouterr().out
    assert "\r" not in raw
    rows = list(csv.reader(io.StringIO(raw)))
    assert rows[0] == ["param", "radius", "quadratic_a", "quadratic_b", "quadratic_c"]
    assert len(rows) == 5
    for row, m in zip(rows[1:], (0.5, 1.0, 1.5, 2.0)):
        assert float(row[0]) == m
        assert float(row[1]) == pytest.approx(1 / (m + 1), abs=1e-15)


def test_sweep_json_and_out_file(tmp_path):
    out = tmp_path / "sweep.json"
    assert call(["sweep", "--formula", "thm21", "--alpha", "1:3:1", "--M", "1",
                 "--format", "json", "--out", str(out)]) == 0
    rows = json.loads(out.read_text())
    assert [r["param"] for r in rows] == [1.0, 2.0, 3.0]
    assert rows[0]["radius"] == pytest.approx(1 / 3)


def test_sweep_csv_file_has_lf_endings(tmp_path):
    out = tmp_path / "sweep.csv"
    assert call(["sweep", "--formula", "thm21", "--M", "1:2:0.5", "--out", str(out)]) == 0
    data = out.read_bytes()
    assert b"\r" not in data and data.count(b"\n") == 4


@pytest.mark.parametrize("spec", ["0:1:0.5", "1:2:0", "1:2e6:1", "2:1:0.5", "1:2", "a:b:c"])
def test_range_validation(spec, capsys):
    with pytest.raises(UsageError):
        parse_range(spec)
    assert call(["sweep", "--formula", "thm21", "--M", spec]) == 1
    assert "error" in capsys.readouterr().err


def test_range_inclusive():
    assert parse_range("0.5:2.0:0.5") == [0.5, 1.0, 1.5, 2.0]
    assert parse_range("0.1:0.3:0.1") == pytest.approx([0.1, 0.2, 0.3])


def test_sweep_needs_exactly_one_range():
    assert call(["sweep", "--formula", "thm21", "--M", "1"]) == 1
    assert call(["sweep", "--formula", "thm21", "--M", "1:2:1", "--alpha", "1:2:1"]) == 1


def test_verify_example(scenario_file, capsys):
    assert call(["verify", "--scenario", str(scenario_file), "--formula", "thm21",
                 "--samples", "1024"]) == 0
    report = json.loads(capsys.readouterr().out)
    jsonschema.validate(report, VERIFICATION_REPORT_SCHEMA)
    assert report["verdict"] == "pass"
    assert report["closed_form_radius"] == pytest.approx(0.2)
    assert report["empirical_radius"] == pytest.approx(1 / 3, abs=1e-5)


def test_verify_claim_below_scenario_M_is_inconclusive(scenario_file, capsys):
    # the claim is read for a smaller M than the scenario has: hypotheses unmet
    assert call(["verify", "--scenario", str(scenario_file), "--formula", "thm21",
                 "--M", "1", "--samples", "512"]) == 3
    assert json.loads(capsys.readouterr().out)["verdict"] == "inconclusive"


def test_verify_exit_two_on_fail(tmp_path, monkeypatch):
    import convexity_radius.cli as cli

    def failing(s, claim, settings=None):
        from convexity_radius.verifier import VerificationReport
        return VerificationReport(s.scenario_id, claim.radius, 0.1, [], "fail", 0, 0.0)

    monkeypatch.setattr(cli, "verify_scenario", failing)
    path = tmp_path / "s.json"
    path.write_text(json.dumps(HALF_GAMMA_TWO))
    assert call(["verify", "--scenario", str(path), "--formula", "thm21"]) == 2


def test_verify_inconclusive_without_classes(tmp_path):
    path = tmp_path / "s.json"
    path.write_text(json.dumps({"fs": [{"catalog": "half_plane"}], "gammas": [2]}))
    assert call(["verify", "--scenario", str(path), "--formula", "thm21", "--samples", "512"]) == 3


def test_verify_csv_profile(scenario_file, capsys):
    assert call(["verify", "--scenario", str(scenario_file), "--format", "csv",
                 "--samples", "512"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "r,theta,re_q" and len(lines) == 1 + 4 * 512


def test_verify_seed_is_reproducible(capsys):
    argv = ["verify", "--seed", "7", "--formula", "thm23", "--samples", "512"]
    assert call(argv) == 0
    first = json.loads(capsys.readouterr().out)
    assert call(argv) == 0
    second = json.loads(capsys.readouterr().out)
    first.pop("wall_time"), second.pop("wall_time")
    assert first == second and first["scenario_id"] == "seed-7"


@pytest.mark.parametrize("text,needle", [
    ('{"fs": [{"catalog": "koebe"}],\n  "gammas": [1,,]}', "line 2"),
    ('{"fs": [{"catalog": "koebe", "params": {"xi": 2}}], "gammas": [1]}', "fs[0]"),
    ('{"fs": [{"catalog": "koebe"}], "gammas": [{"re": 1}]}', "gammas[0]"),
])
def test_malformed_scenario_diagnostics(tmp_path, capsys, text, needle):
    path = tmp_path / "bad.json"
    path.write_text(text)
    assert call(["verify", "--scenario", str(path), "--formula", "thm21"]) == 1
    assert needle in capsys.readouterr().err


def test_missing_scenario_file(tmp_path):
    assert call(["verify", "--scenario", str(tmp_path / "nope.json")]) == 1
    assert call(["verify"]) == 1


def test_check_command(capsys):
    assert call(["check", "--function", "koebe", "--class", "starlike", "--class-param", "0"]) == 0
    assert json.loads(capsys.readouterr().out)["passed"] is True
    assert call(["check", "--function", "koebe", "--class", "convex"]) == 2
    assert call(["check", "--function", "ozaki_example", "--beta", "0.5", "--class", "ozaki"]) == 0
    assert call(["check", "--function", "koebe", "--class", "univalent"]) == 0
    assert "necessary-only" in capsys.readouterr().out
    assert call(["check", "--function", "starlike_extremal", "--class", "convex"]) == 1


@pytest.mark.parametrize("argv", [
    ["radius", "--formula", "thm21", "--alpha", "0.5", "--M", "1"],
    ["radius", "--formula", "thm99"],
    ["radius", "--alpha", "1"],
    ["radius", "--formula", "thm21", "--M", "x"],
    ["radius", "--formula", "thm23", "--beta", "1.5"],
    ["radius", "--formula", "thm21", "--M", "1:2:1"],
    ["bogus"],
    [],
])
def test_usage_errors_exit_one(argv):
    assert call(argv) == 1


def test_config_overrides_flags(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"formula": "thm23", "beta": 0.5, "M": 2}))
    assert call(["radius", "--formula", "thm21", "--M", "1", "--config", str(cfg)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["formula"] == "thm23" and out["radius"] == 0.5


@pytest.mark.parametrize("text", ['{"formula": ', '{"colour": 1}', '[1]', '{"command": "sweep"}'])
def test_bad_config(tmp_path, text):
    cfg = tmp_path / "run.json"
    cfg.write_text(text)
    assert call(["radius", "--formula", "thm21", "--config", str(cfg)]) == 1


def test_run_with_config_object(capsys):
    assert run(RunConfig("radius", formula="cor_convex", M="0.5")) == 0
    assert json.loads(capsys.readouterr().out)["radius"] == 0.5


def test_schema_matrix(capsys):
    for formula in FORMULAS + ("thm24",):
        for M in ("0", "0.25", "3"):
            for N in ("0", "1.5"):
                argv = ["radius", "--formula", formula, "--alpha", "1.5", "--beta", "0.5",
                        "--xi", "0.25", "--M", M, "--N", N]
                assert call(argv) == 0
                jsonschema.validate(json.loads(capsys.readouterr().out), RADIUS_RESULT_SCHEMA)
    for variant in ("paper", "rederived"):
        assert call(["radius", "--formula", "thm24", "--variant", variant, "--M", "1", "--N", "1"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["variant"] == variant and out["formula"] == f"thm24_{variant}"


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "convexity_radius", "radius", "--formula", "thm22", "--M", "1"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["radius"] == pytest.approx(1 / (7**0.5 + 2))
