import json

import pytest

from polyco.cli import main

BRAID = """\
polygraph braid
gens s t
rule alpha : s t s => t s t
rule beta : t s t => s t s
"""

CONVERGENT = """\
polygraph upsilon
gens s t a
rule r1 : s t s => a
rule r2 : t s t => a
rule r3 : s a => a t
rule r4 : t a => a s
"""


@pytest.fixture()
def braid_file(tmp_path):
    f = tmp_path / "braid.poly"
    f.write_text(BRAID)
    return str(f)


@pytest.fixture()
def convergent_file(tmp_path):
    f = tmp_path / "upsilon.poly"
    f.write_text(CONVERGENT)
    return str(f)


def test_analyze_text(braid_file, capsys):
    code = main(["analyze", braid_file])
    out = capsys.readouterr().out
    assert code == 0
    assert "critical" in out and "4" in out


def test_analyze_json(braid_file, capsys):
    code = main(["analyze", braid_file, "--format", "json"])
    assert code == 0
    data = json.loads(capsys.readouterr().out)
    assert len(data["critical_branchings"]) == 4
    assert data["classification"] == "quasi_terminating_not_terminating"
    assert data["elementary_loop_classes"] == 1


def test_analyze_truncated_budget_is_inconclusive(braid_file, capsys):
    code = main(["analyze", braid_file, "--max-states", "3"])
    assert code == 3


def test_complete_certifies_braid(braid_file, capsys):
    code = main(["complete", braid_file, "--format", "json"])
    assert code == 0
    data = json.loads(capsys.readouterr().out)
    assert data["verdict"] == "CERTIFIED"
    assert len(data["cells"]) == 5


def test_complete_convergent_with_nf_labels(convergent_file, capsys):
    code = main(["complete", convergent_file, "--label", "nf"])
    out = capsys.readouterr().out
    assert code == 0
    assert "CERTIFIED" in out and "D6" in out


def test_check_decreasing_reports_context_fragility(braid_file, capsys):
    # the fixed completion diagrams do not stay decreasing under every
    # whisker, so the literal re-check is inconclusive by design
    code = main(["check-decreasing", braid_file, "--format", "json"])
    assert code == 3
    data = json.loads(capsys.readouterr().out)
    assert data["peiffer_ok"]
    assert all(b["status"] == "strict" for b in data["branchings"])
    assert not data["context"]["ok"]
    assert data["context"]["violations"]


def test_fill_sphere(braid_file, tmp_path, capsys):
    sphere = tmp_path / "sphere.txt"
    sphere.write_text(
        "sphere : 1|alpha|t => s|beta|1 ; s|alpha|1 ; 1|alpha|t\n")
    code = main(["fill-sphere", braid_file, str(sphere)])
    out = capsys.readouterr().out
    assert code == 0
    assert "D2" in out or "E1" in out


def test_homology_reduced(braid_file, capsys):
    code = main(["homology", braid_file, "--format", "json"])
    assert code == 0
    data = json.loads(capsys.readouterr().out)
    assert data["H0"] == "Z" and data["H1"] == "Z" and data["H2"] == "Z"


def test_homology_with_cells_file(braid_file, tmp_path, capsys,
                                  braid_completion):
    from polyco.completion import format_extension
    ext = tmp_path / "cells.txt"
    ext.write_text(format_extension(braid_completion))
    code = main(["homology", braid_file, "--cells", str(ext),
                 "--format", "json"])
    data = json.loads(capsys.readouterr().out)
    assert code == 0
    assert data["H2"] == "0" and data["cells3"] == 5


def test_missing_file_is_input_error(capsys):
    assert main(["analyze", "/nonexistent/x.poly"]) == 2


def test_malformed_file_is_input_error(tmp_path, capsys):
    f = tmp_path / "bad.poly"
    f.write_text("polygraph broken\ngens a\nrule r : a b => a\n")
    assert main(["analyze", str(f)]) == 2


def test_qnf_map_option(braid_file, tmp_path, capsys):
    from polyco.fixtures import braid_qnf_map
    from polyco.labelling import format_qnf_map
    m = tmp_path / "qnf.map"
    m.write_text(format_qnf_map(braid_qnf_map(7)))
    code = main(["complete", braid_file, "--qnf-map", str(m)])
    out = capsys.readouterr().out
    assert code == 0 and "CERTIFIED" in out
