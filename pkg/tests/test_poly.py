import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from adjulab.errors import DivisionByZero, ParseError
from adjulab.fields import GF, QQ
from adjulab.poly import (
    Poly,
    poly_arith,
    poly_derivative,
    poly_from_json,
    poly_gcd,
    poly_parse,
    poly_reversal,
    poly_scale_substitute,
    poly_to_json,
    poly_xgcd,
)

from conftest import fields, scalars

X = Poly.x(QQ)


def P(*coeffs, f=QQ):
    return Poly([f(c) for c in coeffs], f)


@st.composite
def polys(draw, f=None, max_deg=5, nonzero=False):
    f = f or draw(fields())
    d = draw(st.integers(0, max_deg))
    p = Poly([draw(scalars(f)) for _ in range(d + 1)], f)
    if nonzero and p.is_zero():
        p = Poly.one(f)
    return p


def test_arith_examples():
    assert poly_arith("mul", X - 2, X - 2) == P(4, -4, 1)
    assert poly_arith("divmod", P(4, -4, 1), X - 2) == (X - 2, Poly.zero(QQ))
    assert poly_arith("add", X, X) == P(0, 2)
    assert poly_arith("sub", X, X).is_zero()
    with pytest.raises(DivisionByZero):
        poly_arith("divmod", X, Poly.zero(QQ))
    with pytest.raises(ValueError):
        poly_arith("pow", X, X)


def test_zero_is_empty():
    assert Poly([0, 0], QQ).coeffs == ()
    assert Poly.zero(QQ).degree == -1
    assert poly_to_json(Poly.zero(QQ)) == []


def test_derivative_examples():
    p = X**2
    assert poly_derivative(p) == P(0, 2)
    assert poly_derivative(p)(0) == 0
    assert poly_derivative(p, 2) == P(2)
    f = GF(5)
    assert poly_derivative(Poly.x(f) ** 5).is_zero()
    with pytest.raises(ValueError):
        poly_derivative(p, 0)


def test_gcd_examples():
    assert poly_gcd(P(4, -4, 1), X - 2) == X - 2
    assert poly_gcd(X - 1, X - 2) == Poly.one(QQ)
    assert poly_gcd(P(2, 4), Poly.zero(QQ)) == Poly([QQ.parse("1/2"), 1], QQ)
    with pytest.raises(ValueError):
        poly_gcd(Poly.zero(QQ), Poly.zero(QQ))


def test_reversal_examples():
    assert poly_reversal(P(4, -4, 1)) == P(1, -4, 4)
    assert poly_reversal(X**2) == P(1)
    assert poly_reversal(P(7)) == P(7)


def test_scale_substitute_examples():
    assert poly_scale_substitute(P(4, -4, 1), 4) == P(64, -16, 1)
    p = P(3, 1, 5)
    assert poly_scale_substitute(p, 1) == p
    assert poly_scale_substitute(X + 1, -1) == X - 1
    with pytest.raises(DivisionByZero):
        poly_scale_substitute(p, 0)


def test_text_format():
    assert poly_parse("1 + 2*x + 3*x^2") == P(1, 2, 3)
    assert poly_parse("x^2 - 4*x + 4") == P(4, -4, 1)
    assert poly_parse("-x") == P(0, -1)
    assert poly_parse("1/2*x", QQ) == Poly([0, QQ.parse("1/2")], QQ)
    assert poly_parse("x + 6", GF(5)) == P(1, 1, f=GF(5))
    with pytest.raises(ParseError):
        poly_parse("x*y")
    with pytest.raises(ParseError):
        poly_parse("")


def test_json_format():
    f = GF(7)
    p = P(1, 0, 6, f=f)
    assert poly_to_json(p) == ["1", "0", "6"]
    assert poly_from_json(["1", "0", "-1"], f) == p
    with pytest.raises(ParseError):
        poly_from_json("1 + x", f)


def test_taylor_coefficient():
    p = (X - 2) ** 3 * (X + 1)
    # p(x + 2) = x^3 (x + 3)
    assert p.taylor_coefficient(2, 3) == 3
    assert p.taylor_coefficient(2, 2) == 0
    f = GF(5)
    q = (Poly.x(f) - f(1)) ** 5 * (Poly.x(f) - f(2))
    # the 5th derivative over 5! is undefined in GF(5); the Taylor coefficient is not
    assert q.taylor_coefficient(f(1), 5) == f(1) - f(2)


@given(st.data())
def test_divmod_round_trip(data):
    f = data.draw(fields())
    a = data.draw(polys(f))
    b = data.draw(polys(f, nonzero=True))
    q, r = poly_arith("divmod", a, b)
    assert q * b + r == a
    assert r.degree < b.degree


@pytest.mark.parametrize("f", [QQ, GF(2), GF(5), GF(7)], ids=repr)
def test_divmod_round_trip_sampled(f):
    rng = random.Random(f"divmod:{f!r}")

    def rand_poly(deg):
        c = [f(rng.randint(-5, 5)) for _ in range(deg + 1)]
        return Poly(c, f)

    for _ in range(1000):
        a = rand_poly(rng.randint(0, 8))
        b = rand_poly(rng.randint(0, 5))
        if b.is_zero():
            continue
        q, r = divmod(a, b)
        assert q * b + r == a and r.degree < b.degree


@given(st.data())
def test_gcd_divides_and_bezout(data):
    f = data.draw(fields())
    a = data.draw(polys(f, nonzero=True))
    b = data.draw(polys(f))
    g = poly_gcd(a, b)
    assert g.is_monic()
    assert (a % g).is_zero() and (b % g).is_zero()
    g2, s, t = poly_xgcd(a, b)
    assert g2 == g and s * a + t * b == g


@given(st.data())
def test_reversal_involution(data):
    f = data.draw(fields())
    p = data.draw(polys(f, nonzero=True))
    if p.coeffs[0] != 0:
        assert poly_reversal(poly_reversal(p)) == p


@given(st.data())
def test_scale_substitute_inverse(data):
    f = data.draw(fields())
    p = data.draw(polys(f, nonzero=True))
    c = data.draw(scalars(f, nonzero=True))
    back = poly_scale_substitute(poly_scale_substitute(p, c), f.one / c)
    assert back.monic() == p.monic()


@given(polys(QQ))
def test_derivative_degree_char0(p):
    if p.degree >= 1:
        assert poly_derivative(p).degree == p.degree - 1


@given(st.data())
def test_derivative_product_rule(data):
    f = data.draw(fields())
    a, b = data.draw(polys(f)), data.draw(polys(f))
    assert poly_derivative(a * b) == poly_derivative(a) * b + a * poly_derivative(b)
