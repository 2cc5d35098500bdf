import json

import pytest

from flextri.cli import main
from flextri.enumeration import complement_pairing


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- exit codes ------------------------------------------------------------

def test_enumerate_expectation_met(capsys):
    code, out, _ = run(capsys, "enumerate", "--graph", "k2222",
                       "--surface", "torus", "--expect", "12")
    assert code == 0
    assert "12 triangulations" in out


def test_enumerate_expectation_mismatch(capsys):
    code, out, _ = run(capsys, "enumerate", "--graph", "k5",
                       "--surface", "moebius", "--expect", "11")
    assert code == 3
    assert "mismatch" in out


def test_enumerate_unknown_graph(capsys):
    code, _, err = run(capsys, "enumerate", "--graph", "petersen")
    assert code == 2
    assert "unknown graph" in err


def test_verify_all_pass(capsys):
    code, out, _ = run(capsys, "verify", "--construction", "schlegel16cell",
                       "--all")
    assert code == 0
    assert "12/12 embedded" in out


def test_verify_suspension_partial(capsys):
    code, out, _ = run(capsys, "verify", "--construction", "suspension",
                       "--all")
    assert code == 4
    assert "6/12 embedded" in out


def test_verify_k_out_of_range(capsys):
    code, _, err = run(capsys, "verify", "--construction", "schlegel16cell",
                       "--all", "--k", "3")
    assert code == 2
    assert "k > 3" in err


def test_verify_bad_k_literal(capsys):
    code, _, err = run(capsys, "verify", "--construction", "suspension",
                       "--all", "--k", "pi")
    assert code == 2


def test_verify_id_out_of_range(capsys):
    code, _, err = run(capsys, "verify", "--construction", "moebius",
                       "--id", "12")
    assert code == 2
    assert "out of range" in err


def test_verify_needs_selection(capsys):
    code, _, err = run(capsys, "verify", "--construction", "moebius")
    assert code == 2


# -- pairs -----------------------------------------------------------------

def test_pairs_output(capsys):
    code, out, _ = run(capsys, "pairs", "--graph", "k6",
                       "--surface", "projective-plane")
    assert code == 0
    rows = [tuple(map(int, line.split())) for line in out.strip().splitlines()]
    assert len(rows) == 6
    assert sorted(i for r in rows for i in r) == list(range(12))


# -- exports ---------------------------------------------------------------

def test_export_off_header_torus(tmp_path, capsys):
    out = tmp_path / "t.off"
    code, _, _ = run(capsys, "export", "--construction", "schlegel16cell",
                     "--id", "0", "--format", "off", "--out", str(out))
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "OFF"
    assert lines[1] == "8 16 24"
    assert len(lines) == 2 + 8 + 16


def test_export_off_header_moebius(tmp_path, capsys):
    out = tmp_path / "m.off"
    code, _, _ = run(capsys, "export", "--construction", "moebius",
                     "--id", "0", "--format", "off", "--out", str(out))
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[:2] == ["OFF", "5 5 10"]


def test_export_obj_face_indices_are_one_based(capsys):
    code, out, _ = run(capsys, "export", "--construction", "moebius",
                       "--id", "0", "--format", "obj")
    assert code == 0
    faces = [l for l in out.splitlines() if l.startswith("f ")]
    assert len(faces) == 5
    indices = {int(tok) for l in faces for tok in l.split()[1:]}
    assert indices <= set(range(1, 6))


def test_export_dim4_without_projection_rejected(capsys):
    code, _, err = run(capsys, "export", "--construction", "rp2-simplex",
                       "--id", "0", "--format", "off")
    assert code == 2
    assert "dim" in err


def test_export_collapsing_projection_rejected(capsys):
    # dropping the last axis of the 4-simplex placement sends the center O
    # onto the apex shadow, so the projected complex is degenerate
    code, _, err = run(capsys, "export", "--construction", "rp2-simplex",
                       "--id", "0", "--format", "json",
                       "--project-drop-axis", "w")
    assert code == 2
    assert "equal points" in err


# -- catalog JSON ----------------------------------------------------------

def test_catalog_json_round_trip(tmp_path, capsys, torus_catalog):
    out = tmp_path / "cat.json"
    code, _, _ = run(capsys, "enumerate", "--graph", "k2222",
                     "--surface", "torus", "--out", str(out))
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["graph"] == "k2222"
    assert doc["surface"] == "torus"
    assert len(doc["triangulations"]) == 12
    for i, entry in enumerate(doc["triangulations"]):
        assert entry["id"] == i
        faces = tuple(tuple(f) for f in entry["faces"])
        assert faces == torus_catalog.triangulations[i].faces
    pairs, _ = complement_pairing(torus_catalog)
    assert [tuple(p) for p in doc["pairs"]] == pairs


def test_export_json_coordinates_exact(capsys):
    code, out, _ = run(capsys, "export", "--construction", "schlegel16cell",
                       "--id", "0", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    b = doc["placement"]["B"]
    # B = (sqrt8, 0, -1) = (2*sqrt2, 0, -1)
    assert b[0] == {"a": "0", "b": "2", "c": "0", "e": "0", "d1": 2, "d2": 3}
    assert b[2]["a"] == "-1"


# -- metrics ---------------------------------------------------------------

def test_metrics_16cell(capsys):
    code, out, _ = run(capsys, "metrics", "--construction", "schlegel16cell")
    assert code == 0
    assert "circumradius^2" in out
    assert "inradius^2" in out


def test_metrics_census_lines(capsys):
    code, out, _ = run(capsys, "metrics", "--construction", "moebius", "--all")
    assert code == 0
    assert out.count("census") == 12


# -- report ----------------------------------------------------------------

def test_report_deterministic_and_complete(tmp_path, capsys):
    a = tmp_path / "a.txt"
    b = tmp_path / "b.txt"
    code1, _, _ = run(capsys, "report", "--out", str(a))
    code2, _, _ = run(capsys, "report", "--out", str(b))
    assert code1 == code2 == 3
    ta, tb = a.read_text(), b.read_text()
    assert ta == tb
    assert ta.rstrip().endswith("REPORT FAIL")
    fails = [l for l in ta.splitlines() if " FAIL " in l]
    assert len(fails) == 1
    assert fails[0].startswith("[rigidity-suspension]")


def test_report_json_shape(capsys):
    code, out, _ = run(capsys, "report", "--format", "json")
    assert code == 3
    doc = json.loads(out)
    assert doc["ok"] is False
    assert any(l.startswith("[count-k2222] PASS") for l in doc["lines"])
