from __future__ import annotations

import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import DATA
from minimalcodes.bounds import m_table
from minimalcodes.formats import (
    MTABLE_COLUMNS,
    MatrixFile,
    MatrixFileError,
    dumps_report,
    jsonable,
    make_report,
    mtable_csv,
    validate_report,
)
from minimalcodes.gf import field_of_order
from minimalcodes.linalg import Matrix


@pytest.mark.parametrize("name", ["fourteen_four_ternary.txt", "twentyseven_six_binary.txt"])
def test_fixture_round_trip(name):
    raw = (DATA / name).read_bytes()
    mf = MatrixFile.parse(raw.decode())
    assert mf.emit().encode() == raw


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([2, 3, 4, 8, 9]), st.integers(1, 4), st.integers(1, 8), st.data())
def test_emit_parse_round_trip(q, k, n, data):
    F = field_of_order(q)
    rows = np.array(data.draw(st.lists(st.integers(0, q - 1), min_size=k * n, max_size=k * n))).reshape(k, n)
    mf = MatrixFile(F.p, F.e, F.modulus, rows)
    text = mf.emit()
    back = MatrixFile.parse(text)
    assert back == mf
    assert back.emit() == text
    assert back.field() == F


def test_from_matrix_uses_field_modulus():
    F = field_of_order(4)
    mf = MatrixFile.from_matrix(Matrix(F, [[1, 2, 3]]))
    assert mf.emit() == "2 2 7 1 3\n1 2 3\n"


def test_prime_field_accepts_zero_modulus():
    mf = MatrixFile.parse("5 1 0 1 2\n1 4\n")
    assert mf.field().q == 5
    assert mf.emit() == "5 1 0 1 2\n1 4\n"


@pytest.mark.parametrize("text,line,column", [
    ("2 1 2 1 2\n1 1 \n", 2, 4),
    ("2 1 2 1 2\n1 2\n", 2, 3),
    ("2 1 2 2 2\n1 1\n", 3, 1),
    ("2 1 2 1 2\n1 01\n", 2, 3),
    ("2 1 2 1 2\n1 1", 2, 4),
    ("2 1 2 1\n1 1\n", 1, 9),
    ("2 2 5 1 2\n1 1\n", 1, 1),
    ("2 1 2 1 2\n1  1\n", 2, 3),
    ("2 1 2 1 2\n1 1\n\n", 3, 1),
])
def test_parse_errors_report_position(text, line, column):
    with pytest.raises(MatrixFileError) as exc:
        MatrixFile.parse(text)
    assert (exc.value.line, exc.value.column) == (line, column)
    assert f"line {line}, column {column}" in str(exc.value)


def test_report_key_order_and_rationals():
    rep = make_report("analysis", {"q": 3}, {"mean": Fraction(189, 20), "arr": np.array([1, 2])}, ["x"])
    assert list(rep) == ["schema_version", "kind", "params", "results", "citations"]
    validate_report(rep)
    text = dumps_report(rep)
    back = json.loads(text)
    assert back["results"]["mean"] == {"num": 189, "den": 20}
    assert back["results"]["arr"] == [1, 2]
    assert dumps_report(rep) == text


def test_report_rejects_unknown_kind_and_types():
    with pytest.raises(ValueError):
        make_report("other", {}, {}, [])
    with pytest.raises(TypeError):
        jsonable(object())


def test_mtable_csv():
    text = mtable_csv(m_table(4, 6))
    lines = text.splitlines()
    assert lines[0].split(",") == MTABLE_COLUMNS
    assert lines[-1].startswith("4,6,26,statistical_length,45,even-lines,,seven_lines=35,")
    assert len(lines) == 6
