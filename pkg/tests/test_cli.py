import json
import subprocess
import sys

import pytest

from invlattice.cli import EXIT_CAP, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, data_path, main


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def strip_timing(doc):
    doc = dict(doc)
    doc.pop("timing")
    return doc


def test_compute_json_round_trip(capsys):
    code, out, _ = run(["compute", "--group", "C4:adj", "--group", "D4:hs", "--trunc", "4"], capsys)
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["schema"] == 1
    assert [r["spec"] for r in doc["reports"]] == ["C4:adj", "D4:hs"]
    c4 = doc["reports"][0]
    assert c4["q_multiples"]["dec"] == [[2]]
    assert c4["ind"]["text"] == "Z/2"
    assert c4["flags"]["sdec_equals_dec_certified"] is True


def test_compute_deterministic(capsys):
    args = ["compute", "--group", "B3:adj", "--group", "A5:mu3", "--trunc", "4"]
    _, first, _ = run(args, capsys)
    _, second, _ = run(args, capsys)
    assert strip_timing(json.loads(first)) == strip_timing(json.loads(second))


def test_compute_csv_and_text(capsys):
    code, out, _ = run(["compute", "--group", "E6:adj", "--format", "csv", "--trunc", "4"], capsys)
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert lines[0].startswith("spec,sym2_w,dec")
    assert lines[1].startswith("E6:adj,3q,6q,6q")
    code, out, _ = run(["compute", "--group", "G2", "--format", "text"], capsys)
    assert code == EXIT_OK and "G2:sc" in out


def test_compute_errors_do_not_abort_batch(capsys):
    code, out, _ = run(["compute", "--group", "Z9", "--group", "A1:adj", "--trunc", "3"], capsys)
    assert code == EXIT_USAGE
    doc = json.loads(out)
    assert [r["spec"] for r in doc["reports"]] == ["A1:adj"]
    assert doc["errors"][0]["spec"] == "Z9"


def test_resource_cap_exit(capsys):
    code, out, _ = run(["compute", "--group", "E8", "--orbit-cap", "100"], capsys)
    assert code == EXIT_CAP
    assert json.loads(out)["errors"][0]["error"] == "resource"


@pytest.mark.parametrize("args", [["compute"], ["compute", "--group", "A1", "--trunc", "2"],
                                  ["frobnicate"], ["compute", "--group", "A1", "--dec-bound", "1"]])
def test_usage_errors(args, capsys):
    assert run(args, capsys)[0] == EXIT_USAGE


def test_catalog_and_out(tmp_path, capsys):
    (tmp_path / "so4.json").write_text("[[1, 1], [2, 0]]")
    cat = tmp_path / "cat.json"
    cat.write_text(json.dumps(["A1xA1:file=so4.json", "A2:adj"]))
    out = tmp_path / "out.json"
    code, _, _ = run(["compute", "--catalog", str(cat), "--out", str(out), "--trunc", "3"], capsys)
    assert code == EXIT_OK
    doc = json.loads(out.read_text())
    assert doc["reports"][0]["flags"]["bounds_only"] is True


def fixtures():
    return json.loads(data_path("fixtures.json").read_text())


def test_verify_paper_subset(tmp_path, capsys):
    quick = [f for f in fixtures() if f["kind"] in ("orbit_sizes", "n_values", "a_formula", "witness_c2")
             or f["group"] in ("C4:adj", "D4:hs")]
    path = tmp_path / "fx.json"
    path.write_text(json.dumps(quick))
    code, out, _ = run(["verify-paper", "--fixtures", str(path)], capsys)
    assert code == EXIT_OK, out
    assert f"{len(quick)}/{len(quick)} fixtures pass" in out


def test_verify_paper_tampered(tmp_path, capsys):
    fx = [f for f in fixtures() if f["id"] in ("c4-adj-dec", "c4-orbit-sizes")]
    fx[0] = dict(fx[0], expected=[8, 24, 32, 15]) if fx[0]["kind"] == "orbit_sizes" else dict(fx[0], expected=3)
    path = tmp_path / "fx.json"
    path.write_text(json.dumps(fx))
    code, out, _ = run(["verify-paper", "--fixtures", str(path)], capsys)
    assert code == EXIT_MISMATCH
    assert "FAIL" in out and "expected" in out and "got" in out


def test_verify_paper_empty(tmp_path, capsys):
    path = tmp_path / "fx.json"
    path.write_text("[]")
    code, out, _ = run(["verify-paper", "--fixtures", str(path)], capsys)
    assert code == EXIT_OK
    assert "warning" in out


def test_eval_expr(capsys):
    code, out, _ = run(["eval-expr", "--file", str(data_path("pgo8_witnesses.txt")), "--format", "json"],
                       capsys)
    assert code == EXIT_OK
    qs = [r["q"] for r in json.loads(out)["results"]]
    assert len(qs) == 18 and qs[0] == -4
    assert all(q % 4 == 0 for q in qs)


def test_eval_expr_errors(capsys):
    assert run(["eval-expr", "--expr", "r1 +"], capsys)[0] == EXIT_USAGE
    assert run(["eval-expr", "--expr", "zz - 1"], capsys)[0] == EXIT_USAGE
    # not in the square of the augmentation ideal
    assert run(["eval-expr", "--expr", "r1 - 1"], capsys)[0] == EXIT_USAGE


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "invlattice", "compute", "--group", "A2:adj",
                           "--format", "csv", "--trunc", "3"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[1].startswith("A2:adj,3q,3q,3q")
