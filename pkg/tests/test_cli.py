import json
import subprocess
import sys

import pytest

from k3twist import cli
from k3twist.dp import DPResult
from k3twist.errors import InvariantViolation
from k3twist.serialize import loads
from conftest import CORPUS, DATA_DIR


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, doc, name="in.json"):
    p = tmp_path / name
    p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(p)


@pytest.mark.parametrize("name", CORPUS)
def test_corpus_exit_codes(name, capsys):
    command, expected = CORPUS[name]
    code, out, _ = run([command, "--input", str(DATA_DIR / name)], capsys)
    assert code == expected
    doc = loads(out)
    assert doc["schema"] == "k3twist/report/v1"
    assert doc["exit_code"] == code
    assert "timing" not in doc


@pytest.mark.parametrize("name", CORPUS)
def test_reports_are_byte_identical(name, capsys):
    command, _ = CORPUS[name]
    argv = [command, "--input", str(DATA_DIR / name)]
    _, first, _ = run(argv, capsys)
    _, second, _ = run(argv, capsys)
    assert first == second


def test_nonfine_report_contents(capsys):
    _, out, _ = run(["analyze-moduli", "--input", str(DATA_DIR / "double_plane_nonfine.json")], capsys)
    r = loads(out)["result"]
    assert r["n"] == 2
    assert r["cokernel"]["invariant_factors"] == [2]
    assert r["h2m"]["signature"] == [3, 19] and r["h2m"]["det"] in (1, -1)
    assert r["obstruction"]["generators"][0]["order"] == 2
    assert all(r["checks"].values()) and r["failures"] == {}
    # rational values are written as "p/q" strings
    assert all(isinstance(x, str) for x in r["obstruction"]["generators"][0]["values"])


def test_batch_reports_each_run(capsys):
    _, out, _ = run(["analyze-moduli", "--input", str(DATA_DIR / "moduli_batch.json")], capsys)
    doc = loads(out)
    labels = [r["label"] for r in loads((DATA_DIR / "moduli_batch.json").read_text())["runs"]]
    assert [r["label"] for r in doc["runs"]] == labels
    assert all(r["status"] == "pass" for r in doc["runs"])


def test_batch_exit_code_is_worst_run(tmp_path, capsys):
    good = {"label": "ok", "surface": {"picard_rank_one": 4}, "v": {"r": 2, "ns": [1], "s": 1}}
    bad = {"label": "bad", "surface": {"picard_rank_one": 4}, "v": {"r": 2, "ns": [1], "s": 3}}
    path = write(tmp_path, {"schema": "k3twist/input/v1", "runs": [good, bad]})
    code, out, _ = run(["analyze-moduli", "--input", path], capsys)
    assert code == 1
    runs = loads(out)["runs"]
    assert [r["status"] for r in runs] == ["pass", "error"]
    assert runs[1]["error"]["failed"] == ["isotropic"]


@pytest.mark.parametrize("text", [
    "{not json",
    '{"schema": "k3twist/input/v1", "surface": {"picard_rank_one": 4}, "v": {"r": 2.0, "ns": [1], "s": 1}}',
    '{"schema": "k3twist/input/v0", "surface": {"picard_rank_one": 4}, "v": {"r": 2, "ns": [1], "s": 1}}',
    '{"schema": "k3twist/input/v1", "surface": {"picard_rank_one": 4}}',
    '{"schema": "k3twist/input/v1", "surface": {"ns_gram": [[3]], "embedding": []}, "v": [0]}',
])
def test_bad_input_exits_1(text, tmp_path, capsys):
    code, out, err = run(["analyze-moduli", "--input", write(tmp_path, text)], capsys)
    assert code == 1
    assert loads(out)["status"] == "error"
    assert "k3twist:" in err


def test_parity_error_is_reported(tmp_path, capsys):
    emb = [[0]] * 22
    doc = {"schema": "k3twist/input/v1", "surface": {"ns_gram": [[3]], "embedding": emb}, "v": {"r": 0, "ns": [0], "s": 1}}
    code, out, _ = run(["analyze-moduli", "--input", write(tmp_path, doc)], capsys)
    assert code == 1 and loads(out)["error"]["type"] == "ParityError"


def test_usage_errors_exit_1(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["no-such-command"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        cli.main(["cech-h2", "--report", "xml"])
    assert exc.value.code == 1


def test_failed_check_exits_2(monkeypatch, capsys):
    monkeypatch.setattr(cli, "dp_identity_check", lambda pair: DPResult(False, (1, 0, 0), "forced"))
    code, out, _ = run(["dp-check", "--input", str(DATA_DIR / "dp_check.json")], capsys)
    assert code == 2
    doc = loads(out)
    assert doc["status"] == "fail" and doc["result"]["witness"] == [1, 0, 0]


def test_invariant_violation_exits_2(monkeypatch, capsys):
    def boom(surface, v):
        raise InvariantViolation("forced")

    monkeypatch.setattr(cli, "run_analyze_moduli", boom)
    code, out, _ = run(["analyze-moduli", "--input", str(DATA_DIR / "quartic_fine.json")], capsys)
    assert code == 2 and loads(out)["error"]["type"] == "InvariantViolation"


def test_io_errors_exit_3(tmp_path, capsys):
    code, _, err = run(["cech-h2", "--input", str(tmp_path / "missing.json")], capsys)
    assert code == 3 and "cannot read" in err
    target = str(tmp_path / "no-such-dir" / "out.json")
    code, _, err = run(["cech-h2", "--input", str(DATA_DIR / "cech_sphere.json"), "--output", target], capsys)
    assert code == 3 and "cannot write" in err


def test_output_file_and_timing(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run(["cech-h2", "--input", str(DATA_DIR / "cech_sphere.json"),
                        "--output", str(target), "--timing"], capsys)
    assert code == 0 and out == ""
    doc = loads(target.read_text())
    assert isinstance(doc["timing"]["elapsed_us"], int)
    assert doc["result"]["group"]["text"] == "Z/2"
    assert doc["result"]["cocycle_is_coboundary"] is False


def test_cech_rejects_rational_coefficients(tmp_path, capsys):
    doc = {"schema": "k3twist/input/v1", "nerve": {"vertices": 3, "simplices": [[0, 1, 2]]}, "modulus": 0, "degree": 2}
    code, _, _ = run(["cech-h2", "--input", write(tmp_path, doc)], capsys)
    assert code == 1


def test_human_report(capsys):
    code, out, _ = run(["analyze-moduli", "--input", str(DATA_DIR / "double_plane_nonfine.json"),
                        "--report", "human"], capsys)
    assert code == 0
    assert out.startswith("k3twist analyze-moduli: pass (exit 0)")
    assert "n = 2" in out and "Z/2" in out
    assert out.count("[pass]") == 8
    _, out, _ = run(["analyze-moduli", "--input", str(DATA_DIR / "moduli_batch.json"), "--report", "human"], capsys)
    assert out.count("run ") == 4


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "k3twist", "brauer-order", "--input", str(DATA_DIR / "brauer_order.json")],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert loads(proc.stdout)["result"]["order"] == 2
