"""Command-line behavior: subcommands, exit codes, determinism."""

from __future__ import annotations

import json

import pytest

from toricfano.cli import main
from toricfano.oracle import corpus_directory

PLANE = "FAN 2 3 3\n1 0\n0 1\n-1 -1\n0 1\n1 2\n0 2\n"
INCOMPLETE = "FAN 2 3 2\n1 0\n0 1\n-1 -1\n0 1\n1 2\n"
HIRZEBRUCH = "FAN 2 4 4\n1 0\n0 1\n-1 2\n0 -1\n0 1\n1 2\n2 3\n0 3\n"


@pytest.fixture
def plane_file(tmp_path):
    path = tmp_path / "plane.fan"
    path.write_text(PLANE)
    return str(path)


def test_validate_ok(plane_file, capsys):
    assert main(["validate", plane_file]) == 0
    out = capsys.readouterr()
    assert "ok: yes" in out.out
    assert out.err == ""


def test_validate_names_failing_check(tmp_path, capsys):
    path = tmp_path / "incomplete.fan"
    path.write_text(INCOMPLETE)
    assert main(["validate", str(path)]) == 1
    assert "facet_pairing" in capsys.readouterr().out


def test_validate_missing_file(capsys):
    assert main(["validate", "/no/such/file.fan"]) == 2
    assert "error:" in capsys.readouterr().err


def test_validate_syntax_error_exit(tmp_path, capsys):
    path = tmp_path / "bad.fan"
    path.write_text("FAN 2 3 3\n1 0\n")
    assert main(["validate", str(path)]) == 2
    assert "line" in capsys.readouterr().err


def test_invariants_json(plane_file, capsys):
    assert main(["invariants", plane_file, "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["dimension"] == 2
    assert data["picard_rho"] == 1
    assert data["pseudo_index_iota"] == 3
    assert data["f_vector"] == [1, 3, 3]
    assert data["wall_degrees"] == [3, 3, 3]
    assert len(data["relations"]) == 1


def test_invariants_withholds_iota_for_non_fano(tmp_path, capsys):
    path = tmp_path / "hirzebruch.fan"
    path.write_text(HIRZEBRUCH)
    assert main(["invariants", str(path), "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["fano"] is False
    assert data["pseudo_index_iota"] is None


def test_mukai_equality(capsys):
    path = str(corpus_directory() / "product_2x2.fan")
    assert main(["mukai", path, "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["equality_case"] == "ProductOfProjectiveSpaces"
    assert data["factors"] == [2, 2]


def test_mukai_rejects_non_fano(tmp_path, capsys):
    path = tmp_path / "hirzebruch.fan"
    path.write_text(HIRZEBRUCH)
    assert main(["mukai", str(path)]) == 2
    assert "not Fano" in capsys.readouterr().err


def test_bounds_row(capsys):
    assert main(["bounds", "7", "3", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["face_count_bound"] == 2
    assert data["mukai_bound"] == 3
    assert data["face_count_bound_suffices"] is True


def test_bounds_unsupported_regime(capsys):
    assert main(["bounds", "4", "4"]) == 2
    assert "regime" in capsys.readouterr().err


def test_structured_format_alias(plane_file, capsys):
    assert main(["invariants", plane_file, "--format", "json"]) == 0
    first = capsys.readouterr().out
    assert main(["invariants", plane_file, "--format",
                 "json-like-structured"]) == 0
    assert capsys.readouterr().out == first


def test_batch_corpus_passes(capsys):
    assert main(["batch", str(corpus_directory()), "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["summary"]["check_failures"] == 0
    assert data["summary"]["parse_errors"] == 0
    assert data["summary"]["files"] == data["summary"]["passed"]
    paths = [e["path"] for e in data["entries"]]
    assert paths == sorted(paths)


def test_batch_is_deterministic(tmp_path, capsys):
    outputs = []
    for _ in range(2):
        assert main(["batch", str(corpus_directory()),
                     "--format", "json"]) == 0
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1]


def test_batch_records_corrupt_files_without_failing(tmp_path, capsys):
    (tmp_path / "plane.fan").write_text(PLANE)
    (tmp_path / "corrupt.fan").write_text("FAN 2 3 3\n1 0\nbroken\n")
    assert main(["batch", str(tmp_path), "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["summary"]["parse_errors"] == 1
    assert data["summary"]["passed"] == 1


def test_batch_flags_mathematical_failures(tmp_path, capsys):
    (tmp_path / "incomplete.fan").write_text(INCOMPLETE)
    assert main(["batch", str(tmp_path), "--format", "json"]) == 1
    data = json.loads(capsys.readouterr().out)
    assert data["summary"]["check_failures"] == 1


def test_batch_missing_directory(capsys):
    assert main(["batch", "/no/such/dir"]) == 2
    assert "error:" in capsys.readouterr().err


def test_batch_report_file(tmp_path, capsys):
    (tmp_path / "plane.fan").write_text(PLANE)
    report = tmp_path / "out.json"
    assert main(["batch", str(tmp_path), "--format", "json",
                 "--report", str(report)]) == 0
    stdout = capsys.readouterr().out
    assert report.read_text() == stdout


def test_batch_empty_directory(tmp_path, capsys):
    assert main(["batch", str(tmp_path), "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["summary"]["files"] == 0


def test_batch_workers_match_serial(capsys):
    assert main(["batch", str(corpus_directory()), "--format", "json"]) == 0
    serial = capsys.readouterr().out
    assert main(["batch", str(corpus_directory()), "--format", "json",
                 "--workers", "4"]) == 0
    assert capsys.readouterr().out == serial


def test_poly_files_accepted(capsys):
    path = str(corpus_directory() / "poly_octahedron.poly")
    assert main(["mukai", path, "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["factors"] == [1, 1, 1]
