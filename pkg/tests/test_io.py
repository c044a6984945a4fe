import json

import numpy as np
import pytest

from mixbound import examples as ex
from mixbound.errors import ParseError, RowSumViolation
from mixbound.io import dumps, fmt12, load_matrix, loads, parse_csv, write_table


def test_csv_round_trip_is_lossless():
    P = ex.biased_walk(5, 0.2, 0.2, 0.6).matrix
    back = loads(dumps(P, "csv"), "csv")
    np.testing.assert_array_equal(back.entries, P.entries)


def test_json_round_trip_keeps_labels():
    P = ex.hypercube(2).matrix
    back = loads(dumps(P, "json"), "json")
    assert back.labels == P.labels
    np.testing.assert_array_equal(back.entries, P.entries)


def test_csv_parse_error_position():
    with pytest.raises(ParseError) as info:
        parse_csv("0.5,0.5\n0.5,abc\n")
    assert (info.value.line, info.value.column) == (2, 5)
    assert info.value.exit_code == 2


def test_csv_ragged_rows():
    with pytest.raises(ParseError) as info:
        parse_csv("1,0\n1\n")
    assert info.value.line == 2


def test_csv_comments_and_blank_lines():
    a = parse_csv("# comment\n\n1,0\n0,1\n")
    np.testing.assert_array_equal(a, np.eye(2))


def test_json_errors():
    with pytest.raises(ParseError) as info:
        loads('{"rows": [[1, 0], [0, 1]', "json")
    assert info.value.line == 1
    with pytest.raises(ParseError):
        loads('{"rows": [[1, "x"], [0, 1]]}', "json")
    with pytest.raises(ParseError):
        loads("[1, 2]", "json")


def test_load_matrix_by_suffix(tmp_path):
    (tmp_path / "m.json").write_text(json.dumps({"labels": ["a", "b"], "rows": [[0.5, 0.5], [0.2, 0.8]]}))
    (tmp_path / "m.csv").write_text("0.5,0.6\n0.5,0.5\n")
    assert load_matrix(tmp_path / "m.json").labels == ("a", "b")
    with pytest.raises(RowSumViolation):
        load_matrix(tmp_path / "m.csv")


def test_fmt12():
    assert fmt12(1 / 3) == "0.333333333333"
    assert fmt12(-0.0) == "0"
    assert fmt12(float("inf")) == "inf"
    assert fmt12(2.0) == "2"


def test_write_table_cells():
    text = write_table(("a", "b", "c", "d"), [(True, 0.5, None, 3)])
    assert text == "a,b,c,d\ntrue,0.5,,3\n"
