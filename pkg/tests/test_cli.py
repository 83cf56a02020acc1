import json
import subprocess
import sys

import pytest

from eqthom.cli import main, read_config
from eqthom.report import SCHEMA_VERSION, Report
from eqthom.suites import UsageError


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_passing_suite_exits_zero(capsys):
    code, out, _ = run(capsys, "run", "principal", "--max-degree", "3")
    assert code == 0
    assert out.startswith("suite principal: PASS")


def test_json_report_schema(capsys):
    code, out, _ = run(capsys, "run", "weil", "--lie", "R", "--max-degree", "4",
                       "--format", "json")
    assert code == 0
    d = json.loads(out)
    assert d["schema_version"] == SCHEMA_VERSION == "1.0"
    assert d["suite"] == "weil" and d["status"] == "pass"
    assert {"label", "anchor", "status", "mode", "residual", "witness"} <= set(d["entries"][0])
    labels = [e["label"] for e in d["entries"]]
    assert labels == sorted(labels)
    back = Report.from_dict(d)
    assert back.passed and len(back.entries) == len(d["entries"])
    assert back.to_dict() == d


def test_reports_are_deterministic_apart_from_timing(capsys):
    outs = []
    for _ in range(2):
        _, out, _ = run(capsys, "run", "gysin", "--format", "json")
        d = json.loads(out)
        d.pop("wall_time")
        outs.append(d)
    assert outs[0] == outs[1]


def test_failing_numeric_tolerance_exits_one(capsys):
    code, out, _ = run(capsys, "run", "transgression", "--tolerance", "1e-30")
    assert code == 1
    assert "FAIL" in out.splitlines()[0]


def test_mutation_failure_carries_a_witness():
    from eqthom.gdgm import check_axioms
    from eqthom.lie import lie_algebra
    from eqthom.weil import build_weil
    rep = check_axioms(build_weil(lie_algebra("aff2"), coadjoint_sign=-1).structure, 3)
    d = rep.to_dict()
    assert d["status"] == "fail"
    assert any(e["status"] == "fail" and e["witness"] for e in d["entries"])


def test_usage_errors_exit_two(capsys):
    assert run(capsys, "run", "nonsense")[0] == 2
    assert run(capsys, "run", "weil", "--lie", "e8")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "run", "models", "--model", "nope")[0] == 2


def test_config_file_and_flag_override(tmp_path, capsys):
    cfg = tmp_path / "c.conf"
    cfg.write_text("# comment\nlie = so3\nmax-degree = 3\n")
    assert read_config(str(cfg)) == {"lie": "so3", "max_degree": 3}
    out_file = tmp_path / "r.json"
    code, _, _ = run(capsys, "run", "axioms", "--config", str(cfg), "--lie", "R",
                     "--format", "json", "--out", str(out_file))
    assert code == 0
    d = json.loads(out_file.read_text())
    assert all(e["label"].startswith("R/") for e in d["entries"])


def test_bad_config_is_a_usage_error(tmp_path, capsys):
    cfg = tmp_path / "bad.conf"
    cfg.write_text("colour = blue\n")
    with pytest.raises(UsageError):
        read_config(str(cfg))
    assert run(capsys, "run", "weil", "--config", str(cfg))[0] == 2
    assert run(capsys, "run", "weil", "--config", str(tmp_path / "missing"))[0] == 2


def test_empty_report_passes():
    rep = Report("empty")
    assert rep.passed and rep.to_dict()["status"] == "pass"


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "eqthom", "run", "gysin", "--truncation", "2"],
                       capture_output=True, text=True)
    assert p.returncode == 0
    assert "suite gysin: PASS" in p.stdout
