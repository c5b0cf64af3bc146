import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from adjulab.errors import DivisionByZero, FieldMismatch, ParseError
from adjulab.fields import GF, QQ, is_prime, parse_field, scalar_arith, scalar_parse

from conftest import field_and_scalars, fields, scalars


def test_add_rationals():
    assert scalar_arith("add", Fraction(1, 2), Fraction(1, 3)) == Fraction(5, 6)


def test_inverse_in_gf7():
    f = GF(7)
    assert scalar_arith("inv", f(3)) == f(5)


def test_inverse_of_zero():
    with pytest.raises(DivisionByZero):
        scalar_arith("inv", Fraction(0))
    with pytest.raises(DivisionByZero):
        scalar_arith("inv", GF(5)(0))


def test_div_by_zero():
    with pytest.raises(DivisionByZero):
        scalar_arith("div", GF(7)(3), GF(7)(0))


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        scalar_arith("add", GF(5)(1), GF(7)(1))
    with pytest.raises(FieldMismatch):
        scalar_arith("mul", Fraction(1, 2), GF(7)(1))
    with pytest.raises(FieldMismatch):
        GF(5)(1) + GF(7)(1)


def test_unknown_op():
    with pytest.raises(ValueError):
        scalar_arith("pow", Fraction(1), Fraction(2))


def test_parse_examples():
    assert scalar_parse("-4/-6", QQ) == Fraction(2, 3)
    assert scalar_parse("−4/−6", QQ) == Fraction(2, 3)
    assert scalar_parse("12", GF(7)) == GF(7)(5)
    with pytest.raises(DivisionByZero):
        scalar_parse("1/0", QQ)


@pytest.mark.parametrize("text", ["", "1.5", "abc", "1/2/3", "--1", "0x10"])
def test_parse_rejects(text):
    with pytest.raises(ParseError):
        scalar_parse(text, QQ)


def test_canonical_form():
    x = scalar_parse("6/-4", QQ)
    assert (x.numerator, x.denominator) == (-3, 2)
    assert QQ.format(Fraction(0)) == "0"
    assert GF(7)(-1) == GF(7)(6)
    assert GF(7).format(GF(7)(-1)) == "6"


def test_prime_check():
    assert [p for p in range(30) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    with pytest.raises(ValueError):
        GF(9)
    assert GF(2**31 - 1)(2**31) == GF(2**31 - 1)(1)


def test_field_json_round_trip():
    for f in (QQ, GF(2), GF(7)):
        assert parse_field(f.to_json()) == f
    with pytest.raises(ParseError):
        parse_field({"kind": "gfp"})
    with pytest.raises(ParseError):
        parse_field({"kind": "reals"})


@pytest.mark.parametrize("f", [QQ, GF(2), GF(5), GF(7), GF(101)], ids=repr)
def test_field_axioms_sampled(f):
    rng = random.Random(f"axioms:{f!r}")

    def draw():
        if f is QQ:
            return Fraction(rng.randint(-50, 50), rng.randint(1, 20))
        return f(rng.randrange(f.p))

    for _ in range(10_000):
        a, b, c = draw(), draw(), draw()
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a and a * b == b * a
        assert a + (-a) == 0
        if a != 0:
            assert a * scalar_arith("inv", a) == 1


@given(field_and_scalars(k=3))
def test_axioms_hypothesis(fs):
    f, (a, b, c) = fs
    add = lambda x, y: scalar_arith("add", x, y)  # noqa: E731
    mul = lambda x, y: scalar_arith("mul", x, y)  # noqa: E731
    assert add(add(a, b), c) == add(a, add(b, c))
    assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))
    assert scalar_arith("sub", a, b) == add(a, scalar_arith("neg", b))
    if b != 0:
        assert mul(scalar_arith("div", a, b), b) == a


@given(st.data())
def test_parse_print_round_trip(data):
    f = data.draw(fields())
    x = data.draw(scalars(f))
    assert scalar_parse(f.format(x), f) == x
