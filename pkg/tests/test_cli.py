from __future__ import annotations

import hashlib
import json
from pathlib import Path

import pytest

from liecheck.cli import main, read_config

ROOT = Path(__file__).resolve().parent.parent
GOLDEN = Path(__file__).resolve().parent / "golden"


def run(capsys, *argv: str) -> tuple[int, str, str]:
    try:
        code = main(list(argv))
    except SystemExit as exc:
        code = exc.code
    out, err = capsys.readouterr()
    return code, out, err


def test_atlas_c3_text(capsys):
    code, out, _ = run(capsys, "atlas", "C", "3")
    assert code == 0
    assert "18 roots" in out
    assert "|D| = 6" in out


def test_atlas_a1_minimal(capsys):
    code, out, _ = run(capsys, "atlas", "A", "1")
    assert code == 0
    assert "no abelian basis D is listed for A1" in out


def test_atlas_c3_json_golden(capsys):
    code, out, _ = run(capsys, "atlas", "C", "3", "--format", "json")
    assert code == 0
    assert out == (GOLDEN / "atlas_C3.json").read_text()


def test_atlas_e8_json_hash_golden(capsys):
    code, out, _ = run(capsys, "atlas", "E", "8", "--format", "json")
    assert code == 0
    assert hashlib.sha256(out.encode()).hexdigest() == (GOLDEN / "atlas_E8.sha256").read_text().strip()
    assert json.loads(out)["n_roots"] == 240


@pytest.mark.parametrize(
    "argv",
    [
        ("atlas", "X", "3"),
        ("atlas", "C"),
        ("atlas", "C", "three"),
        ("verify", "E", "5"),
        ("verify", "B", "5", "--checks", "bogus"),
        ("nonsense",),
        ("kam", "audit", "--l0", "100"),
        ("kam", "audit"),
        ("model", "run", "/nonexistent.json"),
    ],
)
def test_usage_errors_exit_64(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 64
    assert "error" in err


def test_verify_exit_codes(capsys):
    assert run(capsys, "verify", "A", "2")[0] == 2
    code, out, _ = run(capsys, "verify", "B", "5", "--checks", "abelian,cardinality")
    assert code == 0
    assert "pass=2 fail=0 flagged=0" in out


def test_verify_json_is_deterministic_and_writes_output(capsys, tmp_path):
    target = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "C", "4", "--seed", "3", "--format", "json", "--output", str(target))
    assert code == 2 and out == ""
    first = target.read_bytes()
    run(capsys, "verify", "C", "4", "--seed", "3", "--format", "json", "--output", str(target))
    assert target.read_bytes() == first
    data = json.loads(first)
    assert data["seed"] == 3 and "elapsed_ms" not in data["results"][0]


def test_verify_timings_flag(capsys):
    code, out, _ = run(capsys, "verify", "C", "3", "--checks", "cardinality", "--timings", "--format", "json")
    assert code == 0
    assert "elapsed_ms" in json.loads(out)["results"][0]


def test_config_merged_under_flags(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# example\nseed = 9\nformat = json\nchecks = cardinality\n")
    code, out, _ = run(capsys, "verify", "C", "3", "--config", str(cfg))
    assert code == 0
    assert json.loads(out)["seed"] == 9
    code, out, _ = run(capsys, "verify", "C", "3", "--config", str(cfg), "--seed", "1", "--format", "text")
    assert out.startswith("report C3 (seed 1)")


def test_config_rejects_unknown_keys(capsys, tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour=blue\n")
    assert run(capsys, "verify", "C", "3", "--config", str(cfg))[0] == 64
    cfg.write_text("no equals sign\n")
    assert run(capsys, "verify", "C", "3", "--config", str(cfg))[0] == 64


def test_read_config_normalizes_dashes(tmp_path):
    cfg = tmp_path / "k.cfg"
    cfg.write_text("dim-g=4\n")
    assert read_config(str(cfg)) == {"dim_g": "4"}


def test_kam_audit_all_pass(capsys):
    code, out, _ = run(capsys, "kam", "audit", "--dim-g", "2", "--beta", "1", "--lambda", "2", "--lambda1", "3", "--l0", "328903", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["ok"] and data["varrho"] == "573"
    assert all(i["holds"] for i in data["inequalities"])


def test_kam_audit_failure_exit_1(capsys):
    code, out, _ = run(capsys, "kam", "audit", "--l0", "68880")
    assert code == 1
    assert "[FAIL] b < a" in out


def test_kam_simulate_and_csv(capsys, tmp_path):
    csv_path = tmp_path / "t.csv"
    code, out, _ = run(capsys, "kam", "simulate", "--varrho", "100", "--l0", "24240", "--eps0", "1e-4", "--steps", "50", "--const", "1", "--csv", str(csv_path))
    assert code == 0 and "all invariants hold" in out
    assert len(csv_path.read_text().splitlines()) == 52


def test_kam_chain_ledger_smoothing(capsys):
    code, out, _ = run(capsys, "kam", "chain")
    assert code == 0 and "varrho = 573" in out
    code, out, _ = run(capsys, "kam", "ledger", "--proof", "jordan_block")
    assert code == 0 and "slack 6" in out
    code, out, _ = run(capsys, "kam", "ledger")
    assert code == 1 and "overdraft 1" in out
    code, out, _ = run(capsys, "kam", "smoothing", "--fields", "1", "--K", "6")
    assert code == 0


def test_model_run(capsys):
    code, out, _ = run(capsys, "model", "run", str(ROOT / "scenarios" / "scenario.json"))
    assert code == 0
    assert "backsub residual=0.000e+00 ok=True" in out


def test_model_run_malformed(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"m": 1}')
    assert run(capsys, "model", "run", str(bad))[0] == 64


def test_config_accepts_option_spellings(capsys, tmp_path):
    cfg = tmp_path / "kam.cfg"
    cfg.write_text("dim-g = 2\nlambda = 2\nlambda1 = 3\nl0 = 328903\nformat = json\n")
    code, out, _ = run(capsys, "kam", "audit", "--config", str(cfg))
    assert code == 0
    assert json.loads(out)["ok"]


def test_config_validates_choices(capsys, tmp_path):
    cfg = tmp_path / "fmt.cfg"
    cfg.write_text("format = xml\n")
    assert run(capsys, "kam", "chain", "--config", str(cfg))[0] == 64
