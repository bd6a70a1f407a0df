import json

import pytest

from hopfgalois.errors import InputError
from hopfgalois.fixtures import builtin_fixture
from hopfgalois.greither_pareigis import classical_structure, descend_hopf_and_action, enumerate_structures
from hopfgalois.linalg import QQ
from hopfgalois.report import check_edges, emit_report, empty_report, lattice_report, parse_report


@pytest.fixture(scope="module")
def closure_reports():
    d = builtin_fixture("q-x3m2-closure").payload
    lam = descend_hopf_and_action(d, d.cosets.lambda_img)
    return lattice_report(d, classical_structure(d), "classical"), lattice_report(d, lam, "lambda")


def test_row_counts_and_verdicts(closure_reports):
    classical, lam = closure_reports
    assert len(classical.rows) == 6 and len(lam.rows) == 3
    for r in closure_reports:
        assert r.verdicts["fixed_field_equals_group_side"]
        assert r.verdicts["rows"] == len(r.rows)
        assert check_edges(r)
    # S3 subgroup lattice: 1 < three C2 < S3 and 1 < C3 < S3
    assert len(classical.edges) == 8
    assert [row.dim for row in lam.rows] == [1, 2, 6]
    assert all(row.flags["h_normal"] for row in lam.rows)
    assert sum(row.flags["normal_subgroup"] for row in classical.rows) == 3


def test_json_round_trip(closure_reports):
    for r in closure_reports:
        text = emit_report(r, "json")
        back = parse_report(text)
        assert back == r
        assert parse_report(json.loads(text)) == r


def test_gf_report_round_trip():
    d = builtin_fixture("gf-2-4").payload
    for s in enumerate_structures(d):
        r = lattice_report(d, s, "gf")
        assert parse_report(emit_report(r, "json")) == r


def test_text_rendering(closure_reports):
    text = emit_report(closure_reports[1], "text")
    assert text.startswith("lattice report lambda over Q: 3 rows, 2 edges")
    assert "verdict fixed_field_equals_group_side: True" in text


def test_bad_reports():
    with pytest.raises(InputError):
        parse_report("{")
    with pytest.raises(InputError):
        parse_report({"kind": "other"})
    with pytest.raises(InputError):
        emit_report(empty_report(QQ), "xml")
    empty = empty_report(QQ, "none")
    assert parse_report(emit_report(empty, "json")) == empty and check_edges(empty)


def test_gf16_classical_report_edges():
    d = builtin_fixture("gf-2-4").payload
    r = lattice_report(d, classical_structure(d), "gf16")
    assert [row.dim for row in r.rows] == [1, 2, 4]
    assert r.edges == [(0, 1), (1, 2)]
    text = emit_report(r, "text")
    assert "edge [0] < [1]  (dim 1 < dim 2)" in text and "edge [1] < [2]  (dim 2 < dim 4)" in text


def test_empty_report_is_header_only():
    assert emit_report(empty_report(QQ, "none"), "text") == "lattice report none over Q: 0 rows, 0 edges\n"


def test_emission_is_deterministic(closure_reports):
    d = builtin_fixture("q-x3m2-closure").payload
    again = lattice_report(d, classical_structure(d), "classical")
    assert emit_report(again, "json") == emit_report(closure_reports[0], "json")
