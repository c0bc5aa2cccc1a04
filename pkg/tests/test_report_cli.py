import csv
import io
import json
import math
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from zeta_audit import cli, report
from zeta_audit.claims import AnchorCheck, ClaimId, ClaimSpec, audit_claim
from zeta_audit.config import OUTPUT_ENV, AuditConfig

SMALL = """\
formats: [json, csv, md]
identity_n: [3, 5]
identity_k: [1, 2, 3]
identity_samples: 2
claim_n: [3]
pairs: [[2, 3], [2, 5]]
sum_s: [2]
zeta_Z: [3]
eta_Z: [1]
strip_Z: [0.5]
reflection_Z: [-1]
partial_sum_terms: 1000
t_min: -2
t_max: 2
zero_n: [3]
probe_Z: [3]
probe_n: [3]
"""


@pytest.fixture
def small_cfg(tmp_path):
    path = tmp_path / "audit.yaml"
    path.write_text(SMALL)
    return path


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# --------------------------------------------------- serialization


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_float_format_round_trips(x):
    assert float(report.fmt_float(x)) == x
    assert json.loads(report.to_json([x]))[0] == x


def test_non_finite_become_strings():
    text = report.to_json({"a": math.nan, "b": math.inf, "c": -math.inf, "d": None})
    data = json.loads(text)
    assert data["a"] == "NaN" and data["b"] == "Infinity" and data["c"] == "-Infinity"


def test_json_shapes():
    assert report.to_json([]) == "[]"
    assert report.to_json({}) == "{}"
    data = json.loads(report.to_json({"x": [1, 2.5, True, "s"], "y": {"z": 1e-300}}))
    assert data == {"x": [1, 2.5, True, "s"], "y": {"z": 1e-300}}


def test_verdict_row_schema():
    v = audit_claim(ClaimSpec(ClaimId.T10_ZETA, Z=3, n=3, k=2, m=3))
    row = report.verdict_row(v, "T10_ZETA-00001")
    for key in ("claim_id", "Z_re", "Z_im", "n", "k", "m", "gamma_mode", "claimed_re", "claimed_im",
                "reference_re", "reference_im", "abs_residual", "classification", "notes"):
        assert key in row and row[key] is not None


def test_csv_and_markdown():
    rows = [{"a": 1, "b": 0.1}, {"a": 2, "b": math.nan, "c": "x|y"}]
    parsed = list(csv.DictReader(io.StringIO(report.rows_to_csv(rows))))
    assert parsed[0]["b"] == "0.10000000000000001"
    assert parsed[1]["b"] == "NaN" and parsed[1]["c"] == "x|y"
    md = report.rows_to_markdown(rows, "T")
    assert md.startswith("# T") and "\\|" not in md.splitlines()[2]


# ----------------------------------------------------- full report


def test_full_report_small(small_cfg, tmp_path, capsys):
    out = tmp_path / "out"
    code, _, err = run(capsys, "full-report", "--config", str(small_cfg), "--out", str(out))
    assert code == 0
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["anchors_passed"] and not manifest["aborted"]
    assert manifest["config_digest"] == AuditConfig.load(small_cfg).digest()

    seen = []
    for name in manifest["files"]:
        assert (out / name).exists()
        if name.endswith(".json") and not name.startswith("NONUNIQUENESS_detail"):
            rows = json.loads((out / name).read_text())
            for r in rows:
                assert None not in r.values()
            seen.extend(r["id"] for r in rows)
    ids = [e["id"] for e in manifest["index"]]
    assert len(ids) == len(set(ids))
    assert sorted(ids) == sorted(seen)
    assert sum(manifest["counts"].values()) == len(ids)

    # both gamma modes present for every moded claim
    rows = json.loads((out / "T10_ZETA.json").read_text())
    assert {r["gamma_mode"] for r in rows} == {"GAMMA_EQUALS_Z", "GAMMA_EQUALS_Z_OVER_NM1"}


def test_formats_json_only(tmp_path, capsys):
    cfg = tmp_path / "c.yaml"
    cfg.write_text(SMALL.replace("formats: [json, csv, md]", "formats: [json]"))
    out = tmp_path / "o"
    assert run(capsys, "full-report", "--config", str(cfg), "--out", str(out))[0] == 0
    suffixes = {p.suffix for p in out.iterdir()}
    assert suffixes == {".json"}


def test_corrupted_config_exit_2(tmp_path, capsys):
    cfg = tmp_path / "bad.yaml"
    cfg.write_text("formats: [json]\nidentity_k: [1, 2\n")
    code, _, err = run(capsys, "full-report", "--config", str(cfg), "--out", str(tmp_path / "o"))
    assert code == 2
    assert "line 3" in err or "line 2" in err
    cfg.write_text("formats: [json]\nnot_a_key: 1\n")
    code, _, err = run(capsys, "full-report", "--config", str(cfg))
    assert code == 2 and "line 2: unknown key" in err


def test_output_dir_precedence(small_cfg, tmp_path, capsys, monkeypatch):
    env_dir = tmp_path / "from-env"
    monkeypatch.setenv(OUTPUT_ENV, str(env_dir))
    assert run(capsys, "full-report", "--config", str(small_cfg))[0] == 0
    assert (env_dir / "manifest.json").exists()
    flag_dir = tmp_path / "from-flag"
    assert run(capsys, "full-report", "--config", str(small_cfg), "--out", str(flag_dir))[0] == 0
    assert (flag_dir / "manifest.json").exists()


def test_anchor_failure_aborts_with_exit_3(small_cfg, tmp_path, capsys, monkeypatch):
    broken = [AnchorCheck("zeta(2)", 1.0, 1.6449, 0.6449, 1e-9, False)]
    monkeypatch.setattr(report, "check_reference_anchors", lambda policy: broken)
    out = tmp_path / "o"
    code, _, _ = run(capsys, "full-report", "--config", str(small_cfg), "--out", str(out))
    assert code == 3
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["aborted"] and manifest["index"] == []


def test_verdict_totality(small_cfg):
    cfg = AuditConfig.load(small_cfg)
    specs = report.build_specs(cfg)
    run_ = report.run_audit(cfg)
    n_fixed_point = len(cfg.pairs) * (cfg.t_max - cfg.t_min + 1)
    assert len(run_.verdicts) == len(specs) + n_fixed_point


# ------------------------------------------------------------- CLI


def test_verify_identity_hand_rows(capsys):
    code, out, _ = run(capsys, "verify-identity", "t2", "--n", "3", "--k", "1..2", "--a", "1", "--d", "1",
                       "--format", "json")
    rows = json.loads(out)
    assert code == 0
    assert [r["abs_residual"] for r in rows] == [2, 2]
    assert all(r["classification"] == "REFUTED" for r in rows)


def test_verify_identity_grid(capsys):
    code, out, _ = run(capsys, "verify-identity", "t1", "--n", "3..6", "--k", "1..20", "--samples", "5",
                       "--format", "csv")
    assert code == 0
    assert len(out.strip().splitlines()) == 1 + 4 * 20 * 5


@pytest.mark.parametrize("argv", [
    ["verify-identity", "t1", "--n", "2"],
    ["verify-identity", "t1", "--k", "0..2"],
    ["verify-identity", "t3"],
    ["claimed-zeta", "--Z", "3", "--n", "3", "--k", "2"],
    ["claimed-zeta", "--Z", "3", "--n", "3", "--k", "2", "--m", "2"],
    ["zero-audit", "--t", "3..1", "--k", "2", "--m", "3"],
    ["zero-audit", "--t", "x", "--k", "2", "--m", "3"],
])
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(argv)
    assert exc.value.code == 2


def test_claimed_zeta_json(capsys):
    code, out, _ = run(capsys, "claimed-zeta", "--Z", "3", "--n", "3", "--k", "2", "--m", "3", "--mode", "gz")
    v = json.loads(out)
    assert code == 0
    assert v["claimed_re"] == 118.68421052631584
    assert v["reference_re"] == pytest.approx(1.2020569031595942, rel=1e-14)
    assert v["classification"] == "REFUTED"


def test_claimed_zeta_pole_is_degenerate(capsys):
    code, out, _ = run(capsys, "claimed-zeta", "--Z", "1", "--n", "3", "--k", "2", "--m", "3", "--mode", "gz")
    assert code == 0 and json.loads(out)["classification"] == "DEGENERATE"


def test_zero_audit_table(capsys):
    code, out, _ = run(capsys, "zero-audit", "--t", "-4..4", "--k", "2", "--m", "3", "--n", "3",
                       "--source", "t14", "--format", "json")
    rows = json.loads(out)
    assert code == 0 and len(rows) == 9
    row0 = next(r for r in rows if r["t"] == 0)
    assert row0["classification"] == "REFUTED"
    assert row0["abs_reference"] == pytest.approx(1.6449340668, rel=1e-9)


def test_zero_audit_c2(capsys):
    code, out, _ = run(capsys, "zero-audit", "--source", "c2", "--t", "1", "--k", "2", "--m", "3",
                       "--format", "json")
    rows = json.loads(out)
    assert code == 0
    assert [r["source"] for r in rows] == ["C2_ARCCOS", "C2_ARCSIN"]
    assert all(r["gamma1"] == 0.5 and r["n"] == 2 for r in rows)


def test_write_config_round_trip(tmp_path, capsys):
    path = tmp_path / "default.yaml"
    assert run(capsys, "write-config", str(path))[0] == 0
    assert AuditConfig.load(path) == AuditConfig()
    with pytest.raises(SystemExit):
        cli.main(["write-config", str(path)])


def test_ref_command(capsys):
    code, out, _ = run(capsys, "ref", "zeta", "--s", "2")
    assert code == 0 and json.loads(out)["value_re"] == pytest.approx(math.pi**2 / 6, rel=1e-14)
    code, out, _ = run(capsys, "ref", "eta", "--s", "0.5+3i")
    assert code == 0 and json.loads(out)["method"] == "ETA_ACCEL"
    code, _, err = run(capsys, "ref", "gamma", "--s", "-2")
    assert code == 2 and "pole" in err


def test_negative_value_merge():
    assert cli.merge_negative_values(["--t", "-4..4", "--k", "2"]) == ["--t=-4..4", "--k", "2"]
    assert cli.int_range("-2..1,5") == [-2, -1, 0, 1, 5]
    assert cli.complex_arg("1.5-2i") == 1.5 - 2j


def test_module_entry_point():
    import subprocess
    import sys
    proc = subprocess.run([sys.executable, "-m", "zeta_audit", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and "0.1.0" in proc.stdout


def test_paths_are_relative_to_out(tmp_path, small_cfg, capsys):
    out = tmp_path / "nested" / "dir"
    assert run(capsys, "full-report", "--config", str(small_cfg), "--out", str(out))[0] == 0
    assert all(not Path(f).is_absolute() for f in json.loads((out / "manifest.json").read_text())["files"])
