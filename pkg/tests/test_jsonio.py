import json

from hypothesis import given, settings, strategies as st
from hypothesis.extra import numpy as hnp
import numpy as np
import pytest

from niep.circulant import CirculantRow
from niep.jsonio import (
    emit, load_json, matrix_from_json, matrix_to_json, parse_values, row_from_json, row_to_json,
    spectrum_from_json, spectrum_to_json,
)
import golden

finite = dict(allow_nan=False, allow_infinity=False)


def test_spectrum_plain_and_pairs():
    s = spectrum_from_json({"values": [10, [1, -2], -3.5]})
    assert s.values.tolist() == [10, 1 - 2j, -3.5]
    assert spectrum_to_json(s) == {"values": [[10.0, 0.0], [1.0, -2.0], [-3.5, 0.0]]}


@pytest.mark.parametrize("bad", [
    {"vals": [1]},
    {"values": 3},
    {"values": [[1, 2, 3]]},
    {"values": ["1"]},
    {"values": [True]},
    {"values": []},
])
def test_spectrum_rejects(bad):
    with pytest.raises(ValueError):
        spectrum_from_json(bad)


def test_matrix_real_and_complex():
    A = matrix_from_json({"rows": 2, "cols": 2, "entries": [1, 2, 3, 4]})
    assert A.dtype == np.float64 and A.tolist() == [[1, 2], [3, 4]]
    B = matrix_from_json({"rows": 1, "cols": 2, "entries": [[1, 1], 2]})
    assert B.dtype == np.complex128 and B.tolist() == [[1 + 1j, 2]]
    assert matrix_to_json(np.eye(2, dtype=int)) == {"rows": 2, "cols": 2, "entries": [1.0, 0.0, 0.0, 1.0]}


@pytest.mark.parametrize("bad", [
    {"rows": 2, "cols": 2, "entries": [1, 2, 3]},
    {"rows": -1, "cols": 1, "entries": []},
    {"rows": 1, "entries": [1]},
    {"rows": 1.5, "cols": 1, "entries": [1]},
    [[1, 2], [3, 4]],
])
def test_matrix_rejects(bad):
    with pytest.raises(ValueError):
        matrix_from_json(bad)


shapes = hnp.array_shapes(min_dims=2, max_dims=2, max_side=5)


def _bitwise_roundtrip(A):
    back = matrix_from_json(json.loads(json.dumps(matrix_to_json(A))))
    assert back.shape == A.shape and back.dtype == A.dtype
    assert np.array_equal(back.view(np.uint8), A.view(np.uint8))


@settings(max_examples=60, deadline=None)
@given(hnp.arrays(np.float64, shapes, elements=st.floats(**finite)))
def test_real_matrix_json_roundtrip_bitwise(A):
    _bitwise_roundtrip(A)


@settings(max_examples=60, deadline=None)
@given(hnp.arrays(np.complex128, shapes, elements=st.complex_numbers(**finite)))
def test_complex_matrix_json_roundtrip_bitwise(A):
    _bitwise_roundtrip(A)


def test_complex_row_roundtrip_bitwise(rng):
    row = CirculantRow(rng.normal(size=7) + 1j * rng.normal(size=7))
    back = row_from_json(json.loads(json.dumps(row_to_json(row))))
    assert np.array_equal(back.row.view(np.uint8), row.row.view(np.uint8))


def test_row_schema():
    assert row_to_json([1, 2]) == {"row": [[1.0, 0.0], [2.0, 0.0]]}
    with pytest.raises(ValueError):
        row_from_json({"values": [1]})


def test_parse_values_dtype():
    assert parse_values([1, 2]).dtype == np.float64
    assert parse_values([1, [2, 0]]).dtype == np.complex128


def test_load_json_inline_and_file(tmp_path):
    assert load_json(' {"values": [1]}') == {"values": [1]}
    path = tmp_path / "s.json"
    path.write_text('{"values": [2]}', encoding="utf-8")
    assert load_json(str(path)) == {"values": [2]}
    with pytest.raises(OSError):
        load_json(str(tmp_path / "missing.json"))
    with pytest.raises(ValueError):
        load_json("{not json")


def test_emit_pretty_golden():
    text = emit(golden.PAIR_M, "pretty")
    lines = text.splitlines()
    assert len(lines) == 8
    assert lines[0].split() == ["1/2", "1/2", "2", "0", "5/2", "1/2", "7/2", "1/2"]
    assert len({len(line) for line in lines}) == 1


def test_emit_pretty_quarters_and_decimals():
    assert emit(np.array([[0.25, -0.75, 1 / 3]]), "pretty").split() == ["1/4", "-3/4", "0.333333"]
    assert emit(np.array([[1 + 0.5j]]), "pretty").strip() == "1+1/2j"


def test_emit_csv():
    assert emit(np.zeros((2, 3)), "csv") == "0,0,0\n0,0,0\n"
    assert emit(np.array([[1.5, -2.0]]), "csv") == "1.5,-2\n"
    assert emit(np.array([[1 + 2j, 3 + 0j, -1 - 0.5j]]), "csv") == "1+2j,3,-1-0.5j\n"


def test_emit_json_parses_back():
    A = np.array([[0.1, 2.0], [3.0, -4.5]])
    assert np.array_equal(matrix_from_json(json.loads(emit(A, "json"))), A)


def test_emit_unknown_format():
    with pytest.raises(ValueError):
        emit(np.eye(2), "xml")
