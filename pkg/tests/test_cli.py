import json
import subprocess
import sys

import pytest

from loopspace.cli import main
from loopspace.fixtures import STANDARD_FIXTURES


def run_cli(args, capsys):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_validate_fixture_ok(capsys):
    code, out, err = run_cli(["validate", "fixture:sphere2"], capsys)
    assert code == 0
    assert "valid" in out and "pass" in out


def test_validate_reports_curvature(capsys):
    code, out, _ = run_cli(["validate", "fixture:nerve-z2"], capsys)
    assert code == 0
    assert "nonzero curvature entries: g1.g1=1" in out


def test_validate_broken_file(tmp_path, capsys):
    pres = STANDARD_FIXTURES["delta2"]()
    data = pres.to_json_dict()
    data["faces"]["012"][0], data["faces"]["012"][1] = \
        data["faces"]["012"][1], data["faces"]["012"][0]
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(data))
    code, out, err = run_cli(["validate", str(path)], capsys)
    assert code == 1
    assert "identity" in out


def test_validate_parse_error_position(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"name": "x",\n  oops')
    code, out, err = run_cli(["validate", str(path)], capsys)
    assert code == 1
    assert "line" in err


def test_loop_homology_json_schema(capsys):
    code, out, _ = run_cli(
        ["loop-homology", "fixture:sphere2", "--ring", "z",
         "--max-degree", "4"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["meta"]["ring"] == "Z"
    entry = payload["results"]["2"]
    assert entry == {"free_rank": 1, "torsion": [2], "exact": True}


def test_loop_homology_reports_are_deterministic(capsys):
    args = ["loop-homology", "fixture:circle", "--extended",
            "--max-degree", "2", "--max-length", "6"]
    _, out1, _ = run_cli(args, capsys)
    _, out2, _ = run_cli(args, capsys)
    assert out1 == out2
    payload = json.loads(out1)
    assert payload["windings"]["3"]["0"]["free_rank"] == 1
    assert payload["windings"]["3"]["0"]["exact"] is True


def test_loop_homology_truncation_unacknowledged(capsys):
    code, out, err = run_cli(
        ["loop-homology", "fixture:circle", "--max-degree", "1"], capsys)
    assert code == 1
    assert "truncation" in err


def test_loop_homology_prime_field_requires_p(capsys):
    code, out, err = run_cli(
        ["loop-homology", "fixture:sphere2", "--ring", "fp",
         "--max-degree", "2"], capsys)
    assert code == 2


def test_loop_homology_file_round_trip(tmp_path, capsys):
    pres = STANDARD_FIXTURES["sphere2"]()
    path = tmp_path / "s2.json"
    path.write_text(pres.dumps())
    code, out, _ = run_cli(
        ["loop-homology", str(path), "--ring", "q", "--max-degree", "3"],
        capsys)
    assert code == 0
    payload = json.loads(out)
    assert [payload["results"][str(n)]["free_rank"] for n in range(4)] == \
        [1, 1, 1, 1]


def test_config_overrides_flags(tmp_path, capsys):
    cfg = tmp_path / "job.json"
    cfg.write_text(json.dumps({"max_degree": 2, "ring": "z"}))
    code, out, _ = run_cli(
        ["loop-homology", "fixture:sphere2", "--max-degree", "5",
         "--ring", "q", "--config", str(cfg)], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["meta"]["ring"] == "Z"
    assert set(payload["results"]) == {"0", "1", "2"}


def test_compare_equal_presentations(tmp_path, capsys):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    a.write_text(json.dumps({"input": "fixture:sphere2", "ring": "z",
                             "max_degree": 3}))
    b.write_text(json.dumps({"input": "fixture:sphere2-pair", "ring": "z",
                             "max_degree": 3}))
    code, out, _ = run_cli(["compare", str(a), str(b)], capsys)
    assert code == 0
    assert json.loads(out)["equal"] is True


def test_compare_unequal(tmp_path, capsys):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    a.write_text(json.dumps({"input": "fixture:sphere2", "ring": "q",
                             "max_degree": 2}))
    b.write_text(json.dumps({"input": "fixture:circle", "ring": "q",
                             "max_degree": 2, "extended": True,
                             "max_length": 6}))
    code, out, _ = run_cli(["compare", str(a), str(b)], capsys)
    assert code == 1
    payload = json.loads(out)
    assert payload["equal"] is False
    assert payload["differences"]


def test_compare_routes_agree(tmp_path, capsys):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    a.write_text(json.dumps({"input": "fixture:sphere2", "ring": "z",
                             "max_degree": 4, "route": "cohochschild"}))
    b.write_text(json.dumps({"input": "fixture:sphere2", "ring": "z",
                             "max_degree": 4,
                             "route": "hochschild-of-cobar"}))
    code, out, _ = run_cli(["compare", str(a), str(b)], capsys)
    assert code == 0
    assert json.loads(out)["equal"] is True


def test_hopf_check_passes_on_spheres(capsys):
    code, out, _ = run_cli(
        ["hopf-check", "fixture:sphere2", "--max-degree", "3",
         "--max-length", "3", "--format", "text"], capsys)
    assert code == 0
    assert "FAIL" not in out


def test_hopf_check_rejects_nonreduced(capsys):
    code, out, err = run_cli(
        ["hopf-check", "fixture:delta2", "--max-degree", "2"], capsys)
    assert code == 1
    assert "reduced" in err


def test_usage_error_exit_code():
    proc = subprocess.run(
        [sys.executable, "-m", "loopspace.cli", "loop-homology"],
        capture_output=True)
    assert proc.returncode == 2
