import csv
import io
import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from adjulab.canonical import elementary_divisors
from adjulab.errors import DivisionByZero, ParseError
from adjulab.fields import GF, QQ, parse_field
from adjulab.matrix import lambda_minus
from adjulab.perturbation import MatrixFamily
from adjulab.serialize import (
    dumps,
    eldiv_from_json,
    eldiv_to_json,
    family_from_json,
    family_to_json,
    matrix_from_json,
    matrix_to_json,
    parse_complex,
    sweep_to_csv,
    vector_from_json,
    vector_to_json,
)
from conftest import M, square_matrices


@given(square_matrices(max_n=4))
def test_matrix_round_trip(A):
    text = dumps(matrix_to_json(A))
    assert matrix_from_json(json.loads(text)) == A


def test_polynomial_matrix_round_trip():
    P = lambda_minus(M([[1, 2], [0, Fraction(1, 3)]]))
    back = matrix_from_json(json.loads(dumps(matrix_to_json(P))))
    assert back.is_poly
    assert back == P


def test_matrix_default_field_is_rational():
    A = matrix_from_json({"rows": [["1/2", "3"], ["-1", "0"]]})
    assert A.field is QQ
    assert A[0, 0] == Fraction(1, 2)


def test_matrix_gf_entries_reduce():
    A = matrix_from_json({"field": {"kind": "gfp", "p": 5}, "rows": [["7", "-1"]]})
    assert A.field == GF(5)
    assert [int(e) for e in A.rows[0]] == [2, 4]


@pytest.mark.parametrize("bad", [
    [[1, 2]],
    {"rows": "nope"},
    {"rows": [["1", "2"], ["3"]]},
    {"field": {"kind": "real"}, "rows": [["1"]]},
    {"field": {"kind": "gfp"}, "rows": [["1"]]},
])
def test_matrix_rejects_bad_json(bad):
    with pytest.raises(ParseError):
        matrix_from_json(bad)


def test_matrix_zero_denominator():
    with pytest.raises(DivisionByZero):
        matrix_from_json({"rows": [["1/0"]]})


def test_vector_round_trip_and_field_check():
    f = GF(7)
    v = (f(1), f(6), f(0))
    assert vector_from_json(vector_to_json(v, f), f) == v
    assert vector_from_json({"field": {"kind": "gfp", "p": 7}, "entries": ["1", "6", "0"]}, f) == v
    with pytest.raises(ParseError):
        vector_from_json({"field": {"kind": "rational"}, "entries": ["1"]}, f)
    with pytest.raises(ParseError):
        vector_from_json("1,2", f)


def test_eldiv_round_trip():
    A = M([[2, 1, 0], [0, 2, 0], [0, 0, 3]])
    ed = elementary_divisors(A)
    assert eldiv_from_json(json.loads(dumps(eldiv_to_json(ed))), QQ) == ed
    with pytest.raises(ParseError):
        eldiv_from_json([{"base": ["1", "1"]}])


def test_field_spec_round_trip():
    for f in (QQ, GF(2), GF(11)):
        assert parse_field(f.to_json()) == f
    with pytest.raises(ParseError):
        parse_field("rational")


def test_family_round_trip():
    rng = np.random.default_rng(3)
    coeffs = [rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3)) for _ in range(3)]
    F = MatrixFamily(coeffs)
    back = family_from_json(json.loads(dumps(family_to_json(F))))
    for a, b in zip(F.coefficients, back.coefficients):
        assert np.array_equal(a, b)


def test_family_accepts_real_entries():
    F = family_from_json({"coefficients": [[[1, 0], [0, 2]], [[[0, 1], 0], [0, 0]]]})
    assert F.coefficients[1][0, 0] == 1j


@pytest.mark.parametrize("bad", [
    {},
    {"coefficients": []},
    {"coefficients": [[[1, 2, 3]]]},
    {"coefficients": [[["a"]]]},
    {"coefficients": [[[1, 0], [0, 1]], [[1]]]},
])
def test_family_rejects_bad_json(bad):
    with pytest.raises((ParseError, ValueError)):
        family_from_json(bad)


@given(st.floats(-1e6, 1e6), st.floats(-1e6, 1e6))
def test_parse_complex_round_trip(re, im):
    assert parse_complex(f"{re!r},{im!r}") == complex(re, im)


def test_parse_complex_forms():
    assert parse_complex("2.5") == 2.5
    assert parse_complex("0,-1") == -1j
    for bad in ("", "1,2,3", "x", "1,i"):
        with pytest.raises(ParseError):
            parse_complex(bad)


def test_sweep_csv_header_and_rows():
    rows = [{"omega": 0.5, "z": 1 + 2j, "formula": 0.25j, "finite_diff": 0.25j, "abs_err": 1e-12}]
    text = sweep_to_csv(rows)
    parsed = list(csv.reader(io.StringIO(text)))
    assert parsed[0] == ["omega", "z", "z_prime_formula", "z_prime_fd", "abs_err"]
    assert complex(parsed[1][1]) == 1 + 2j
    assert float(parsed[1][4]) == 1e-12


def test_dumps_is_key_order_independent():
    assert dumps({"b": 1, "a": [1, 2]}) == dumps({"a": [1, 2], "b": 1})
