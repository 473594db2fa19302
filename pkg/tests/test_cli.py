"""Command-line behaviour: exit codes, JSON determinism, file handling."""

import json
import shutil
import subprocess

import pytest

from emm.cli import main

pytestmark = pytest.mark.usefixtures("capsys")


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def test_info_text(capsys):
    code, out = run(capsys, ["info", "k4"])
    assert code == 0
    assert "vertices 4, edges 6, genus 3" in out
    assert "bridges: none" in out


def test_info_json_on_edge_list_file(tmp_path, capsys):
    path = tmp_path / "graph.txt"
    path.write_text("# a triangle with a free circle\n"
                    "a b\nb c ride\nc a\nLOOP free\n")
    code, out = run(capsys, ["--json", "info", str(path)])
    assert code == 0
    data = json.loads(out)
    assert data["vertices"] == 3 and data["edges"] == 4
    assert data["genus"] == 2  # triangle cycle plus the vertex-free circle


def test_zemm_positive_json(capsys):
    code, out = run(capsys, ["zemm", "k4", "--json"])
    assert code == 0
    data = json.loads(out)
    assert data["exists"] is True
    assert data["root_lattice"] == "A3"
    assert data["pieces"][0]["branch"] == "planar"


def test_zemm_negative_exit(capsys):
    code, out = run(capsys, ["zemm", "k7"])
    assert code == 3
    assert "no integral edge-minimizing metric" in out


def test_json_flag_position_and_determinism(capsys):
    code1, out1 = run(capsys, ["--json", "zemm", "k4"])
    code2, out2 = run(capsys, ["zemm", "k4", "--json"])
    assert code1 == code2 == 0
    assert out1 == out2
    code3, out3 = run(capsys, ["--json", "zemm", "k4"])
    assert out3 == out1  # byte-identical across runs


def test_qemm_theta(capsys):
    code, out = run(capsys, ["qemm", "theta", "--json"])
    assert code == 0
    data = json.loads(out)
    assert data["verified"]["ok"] is True
    assert data["form"]["gram"] == [["1/1", "-1/2"], ["-1/2", "1/1"]]


def test_verify_round_trip(tmp_path, capsys):
    code, out = run(capsys, ["zemm", "k4", "--json"])
    report = tmp_path / "k4.json"
    report.write_text(out)  # verify unwraps whole reports
    code, out = run(capsys, ["verify", "k4", str(report), "--q", "--strong"])
    assert code == 0
    assert "verification ok" in out
    # same form against the wrong graph: dimension mismatch, exit 1
    code, out = run(capsys, ["verify", "theta", str(report)])
    assert code == 1
    assert "FAILED" in out


def test_verify_json_failure_payload(tmp_path, capsys):
    form = tmp_path / "form.json"
    form.write_text(json.dumps({"dim": 2, "gram": [["1/1", "0/1"],
                                                   ["0/1", "1/1"]]}))
    code, out = run(capsys, ["--json", "verify", "theta", str(form)])
    assert code == 1
    data = json.loads(out)
    assert data["ok"] is False
    # only the double-edge functional (-1, -1) misses norm one
    assert [f["code"] for f in data["failures"]] == ["edge_norm"]
    assert data["failures"][0]["edge"] == 0


@pytest.mark.parametrize("argv", [
    ["zemm", "not-a-graph"],
    ["verify", "k4", "/does/not/exist.json"],
    ["torelli", "k4", "--fan", "weird"],
    ["corpus", "--filter", "zzz"],
])
def test_input_errors_exit_2(argv, capsys):
    code = main(argv)
    capsys.readouterr()
    assert code == 2


def test_budget_exit_4(capsys):
    code, out = run(capsys, ["zemm", "petersen", "--max-nodes", "5"])
    assert code == 4


def test_torelli_exits(capsys):
    code, out = run(capsys, ["torelli", "k7", "--fan", "cent"])
    assert code == 3
    assert "NOT regular" in out
    code, out = run(capsys, ["torelli", "k7", "--fan", "vor"])
    assert code == 0
    code, out = run(capsys, ["--json", "torelli", "theta", "--fan", "perf"])
    assert code == 0
    assert json.loads(out)["regular"] is True


def test_corpus_filter(capsys):
    code, out = run(capsys, ["corpus", "--filter", "theta"])
    assert code == 0
    assert out.startswith("theta")
    assert "ok" in out


def test_installed_entry_point():
    exe = shutil.which("emm")
    assert exe, "console script should be installed"
    proc = subprocess.run([exe, "--json", "info", "k4"],
                          capture_output=True, text=True, timeout=60)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["genus"] == 3
