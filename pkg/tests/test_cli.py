import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

CONFIGS = Path(__file__).parent / "configs"
GOLDEN = Path(__file__).parent / "golden"
SCHEMA = json.loads(
    (Path(__file__).parents[1] / "src/zygops/schemas/report.schema.json").read_text())


def run_cli(*args, cwd=None):
    return subprocess.run([sys.executable, "-m", "zygops.cli", *args],
                          capture_output=True, text=True, cwd=cwd)


def canonical_payload_bytes(report_path: Path) -> str:
    from zygops.reports import canonical_json
    envelope = json.loads(report_path.read_text())
    return canonical_json(envelope["payload"]) + "\n"


@pytest.mark.parametrize("case,verdict", [("compact", "compact"),
                                          ("noncompact", "not_compact")])
def test_analyze_bounded_cases(tmp_path, case, verdict):
    result = run_cli("analyze", "--config", str(CONFIGS / f"{case}.toml"),
                     "--out", str(tmp_path))
    assert result.returncode == 0, result.stderr
    envelope = json.loads((tmp_path / "analyze_report.json").read_text())
    jsonschema.validate(envelope, SCHEMA)
    assert envelope["payload"]["results"]["boundedness"]["verdict"] == "bounded"
    assert envelope["payload"]["results"]["compactness"] == verdict
    for name in ("profiles.csv", "monomials.csv", "agreement.csv"):
        assert (tmp_path / name).exists()


def test_analyze_unbounded_stops_early(tmp_path):
    result = run_cli("analyze", "--config", str(CONFIGS / "unbounded.toml"),
                     "--out", str(tmp_path))
    assert result.returncode == 0
    payload = json.loads((tmp_path / "analyze_report.json").read_text())["payload"]
    assert payload["results"]["boundedness"]["verdict"] == "unbounded"
    assert payload["results"]["essential_norm"] is None
    assert "note" in payload["results"]


def test_require_bounded_exit_code(tmp_path):
    result = run_cli("analyze", "--config", str(CONFIGS / "unbounded.toml"),
                     "--out", str(tmp_path), "--require-bounded")
    assert result.returncode == 1


def test_parse_error_exit_code(tmp_path):
    result = run_cli("analyze", "--config", str(CONFIGS / "bad_phi.toml"),
                     "--out", str(tmp_path))
    assert result.returncode == 2
    assert "offset" in result.stderr


def test_missing_config_exit_code(tmp_path):
    result = run_cli("analyze", "--config", str(tmp_path / "nope.toml"))
    assert result.returncode == 2


def test_bad_override_exit_code(tmp_path):
    result = run_cli("analyze", "--config", str(CONFIGS / "compact.toml"),
                     "--out", str(tmp_path), "--set", "grid.monomials=0")
    assert result.returncode == 2


@pytest.mark.parametrize("case", ["compact", "unbounded", "noncompact"])
def test_golden_payload_reproduction(tmp_path, case):
    result = run_cli("analyze", "--config", str(CONFIGS / f"{case}.toml"),
                     "--out", str(tmp_path))
    assert result.returncode == 0, result.stderr
    got = canonical_payload_bytes(tmp_path / "analyze_report.json")
    expected = (GOLDEN / f"{case}_payload.json").read_text()
    assert got == expected


def test_determinism_two_runs(tmp_path):
    for sub in ("one", "two"):
        result = run_cli("analyze", "--config", str(CONFIGS / "compact.toml"),
                         "--out", str(tmp_path / sub))
        assert result.returncode == 0
    b1 = canonical_payload_bytes(tmp_path / "one/analyze_report.json")
    b2 = canonical_payload_bytes(tmp_path / "two/analyze_report.json")
    assert b1 == b2


def test_set_override_changes_result(tmp_path):
    result = run_cli("analyze", "--config", str(CONFIGS / "compact.toml"),
                     "--out", str(tmp_path), "--set", "spaces.beta=2.5")
    assert result.returncode == 0
    payload = json.loads((tmp_path / "analyze_report.json").read_text())["payload"]
    assert payload["config"]["spaces"]["beta"] == 2.5


def test_sweep_beta_boundary(tmp_path):
    result = run_cli("sweep", "--config", str(CONFIGS / "sweep_beta.toml"),
                     "--out", str(tmp_path))
    assert result.returncode == 0, result.stderr
    payload = json.loads((tmp_path / "sweep_report.json").read_text())["payload"]
    cells = {c["cell"]["beta"]: c["verdict"] for c in payload["results"]["cells"]}
    assert cells == {1.25: "unbounded", 1.5: "bounded", 1.75: "bounded"}
    lines = (tmp_path / "sweep.csv").read_text().strip().splitlines()
    assert len(lines) == 4  # header + three cells


def test_sweep_scale_parameter_ordering(tmp_path):
    result = run_cli("sweep", "--config", str(CONFIGS / "sweep_param.toml"),
                     "--out", str(tmp_path))
    assert result.returncode == 0, result.stderr
    payload = json.loads((tmp_path / "sweep_report.json").read_text())["payload"]
    estimates = [c["essential_estimate"] for c in payload["results"]["cells"]]
    assert all(e is not None for e in estimates)
    assert all(b >= a - 1e-12 for a, b in zip(estimates, estimates[1:]))


def test_sweep_empty_range_rejected(tmp_path):
    result = run_cli("sweep", "--config", str(CONFIGS / "sweep_beta.toml"),
                     "--out", str(tmp_path), "--set", "sweep.beta=[]")
    assert result.returncode == 2


def test_monomials_command(tmp_path):
    result = run_cli("monomials", "--config", str(CONFIGS / "compact.toml"),
                     "--out", str(tmp_path))
    assert result.returncode == 0, result.stderr
    lines = (tmp_path / "monomials.csv").read_text().strip().splitlines()
    assert lines[0] == "j,value"
    assert len(lines) == 61
    envelope = json.loads((tmp_path / "monomials_report.json").read_text())
    jsonschema.validate(envelope, SCHEMA)


def test_weighted_type_command(tmp_path):
    result = run_cli("weighted-type", "--config", str(CONFIGS / "weighted.toml"),
                     "--out", str(tmp_path))
    assert result.returncode == 0, result.stderr
    payload = json.loads((tmp_path / "weighted_type_report.json").read_text())["payload"]
    wt = payload["results"]["weighted_type"]
    assert wt["compact"] is True
    assert abs(wt["sup_side"]["value"] - 1.0) < 1e-9
    assert (tmp_path / "weighted_monomials.csv").exists()


def test_verify_subset_passes(tmp_path):
    result = run_cli("verify", "--config", str(CONFIGS / "compact.toml"),
                     "--out", str(tmp_path), "--suite", "parser-roundtrip",
                     "--suite", "gamma")
    assert result.returncode == 0, result.stdout + result.stderr
    lines = (tmp_path / "verify_results.jsonl").read_text().strip().splitlines()
    assert all(json.loads(line)["passed"] for line in lines)


def test_verify_unknown_suite(tmp_path):
    result = run_cli("verify", "--config", str(CONFIGS / "compact.toml"),
                     "--out", str(tmp_path), "--suite", "nope")
    assert result.returncode == 2


def test_verify_known_failing_band(tmp_path):
    # the strict log-limit band cannot hold at n = 10^6; verify reports it
    result = run_cli("verify", "--config", str(CONFIGS / "compact.toml"),
                     "--out", str(tmp_path), "--suite", "monomial-asymptotics")
    assert result.returncode == 1
    checks = {json.loads(line)["check"]: json.loads(line)["passed"]
              for line in (tmp_path / "verify_results.jsonl").read_text().splitlines()}
    assert checks["log-weight-limit-n1e6"] is False
    others = {k: v for k, v in checks.items() if k != "log-weight-limit-n1e6"}
    assert all(others.values())


def test_version_flag():
    result = run_cli("--version")
    assert result.returncode == 0
    assert "zygops" in result.stdout
