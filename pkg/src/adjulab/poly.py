"""Dense univariate polynomials over an exact field.

Coefficients are stored low-to-high; the zero polynomial has no
coefficients and degree -1.
"""
from __future__ import annotations

import re

from .errors import DivisionByZero, FieldMismatch, ParseError
from .fields import QQ, Field


class Poly:
    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs=(), field: Field = QQ):
        cs = [field(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        self.field = field

    @classmethod
    def _raw(cls, coeffs: list, field: Field) -> "Poly":
        # coefficients already canonical elements of `field`
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        p = object.__new__(cls)
        p.coeffs = tuple(coeffs)
        p.field = field
        return p

    @classmethod
    def x(cls, field: Field = QQ) -> "Poly":
        return cls._raw([field.zero, field.one], field)

    @classmethod
    def const(cls, c, field: Field = QQ) -> "Poly":
        return cls._raw([field(c)], field)

    @classmethod
    def zero(cls, field: Field = QQ) -> "Poly":
        return cls._raw([], field)

    @classmethod
    def one(cls, field: Field = QQ) -> "Poly":
        return cls._raw([field.one], field)

    @classmethod
    def monomial(cls, k: int, field: Field = QQ, c=1) -> "Poly":
        return cls._raw([field.zero] * k + [field(c)], field)

    @classmethod
    def from_roots(cls, roots, field: Field = QQ) -> "Poly":
        out = cls.one(field)
        for r in roots:
            out = out * cls._raw([-field(r), field.one], field)
        return out

    # -- basic properties -------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 1

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def coeff(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.field.zero

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        inv = self.field.one / self.coeffs[-1]
        return Poly._raw([c * inv for c in self.coeffs], self.field)

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "Poly | None":
        if isinstance(other, Poly):
            if other.field is not self.field:
                raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
            return other
        try:
            return Poly._raw([self.field(other)], self.field)
        except TypeError:
            return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly._raw(out, self.field)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw([-c for c in self.coeffs], self.field)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            try:
                c = self.field(other)
            except TypeError:
                return NotImplemented
            if c == 0:
                return Poly._raw([], self.field)
            return Poly._raw([a * c for a in self.coeffs], self.field)
        if other.field is not self.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly._raw([], self.field)
        out = [self.field.zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                out[i + j] = out[i + j] + ai * bj
        return Poly._raw(out, self.field)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative polynomial power")
        result, base = Poly.one(self.field), self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __divmod__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.coeffs:
            raise DivisionByZero("polynomial division by zero")
        rem = list(self.coeffs)
        db = len(o.coeffs) - 1
        if len(rem) - 1 < db:
            return Poly._raw([], self.field), self
        inv = self.field.one / o.coeffs[-1]
        quot = [self.field.zero] * (len(rem) - db)
        bc = o.coeffs
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db] * inv
            quot[k] = c
            if c == 0:
                continue
            for i in range(db):
                rem[k + i] = rem[k + i] - c * bc[i]
            rem[k + db] = self.field.zero
        return Poly._raw(quot, self.field), Poly._raw(rem[:db], self.field)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Poly":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def divides(self, other: "Poly") -> bool:
        return not (other % self)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field is other.field and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == Poly._raw([self.field(other)], self.field).coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.coeffs, repr(self.field)))

    # -- evaluation -------------------------------------------------------
    def __call__(self, x):
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self, order: int = 1) -> "Poly":
        """Formal derivative of the given order.

        Coefficient k picks up the integer k (k-1) ... (k-order+1), read in
        the field, so the result is correct in positive characteristic.
        """
        if order < 0:
            raise ValueError("derivative order must be non-negative")
        out = []
        for k in range(order, len(self.coeffs)):
            falling = 1
            for t in range(order):
                falling *= k - t
            out.append(self.coeffs[k] * falling)
        return Poly._raw(out, self.field)

    def shift(self, c) -> "Poly":
        """p(x + c) by repeated synthetic division (no division by k!)."""
        c = self.field(c)
        cs = list(self.coeffs)
        n = len(cs)
        for i in range(n):
            for k in range(n - 2, i - 1, -1):
                cs[k] = cs[k] + c * cs[k + 1]
        return Poly._raw(cs, self.field)

    def taylor_coefficient(self, c, m: int):
        """Coefficient of (x - c)^m, i.e. p^(m)(c)/m! without dividing by m!."""
        return self.shift(c).coeff(m)

    def root_multiplicity(self, c) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has every root")
        shifted = self.shift(c).coeffs
        m = 0
        while shifted[m] == 0:
            m += 1
        return m

    def compose(self, other: "Poly") -> "Poly":
        acc = Poly.zero(self.field)
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    # -- text -------------------------------------------------------------
    def __repr__(self):
        return f"Poly([{', '.join(self.field.format(c) for c in self.coeffs)}], {self.field!r})"

    def __str__(self):
        return poly_format(self)


def poly_arith(op: str, a: Poly, b: Poly | None = None):
    """add, sub, mul, or divmod (returns quotient and remainder)."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "divmod":
        return divmod(a, b)
    raise ValueError(f"unknown op {op!r}")


def poly_derivative(p: Poly, order: int = 1) -> Poly:
    if order < 1:
        raise ValueError("order must be >= 1")
    return p.derivative(order)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    while b:
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """(g, s, t) with s a + t b = g, g monic."""
    field = a.field
    r0, r1 = a, b
    s0, s1 = Poly.one(field), Poly.zero(field)
    t0, t1 = Poly.zero(field), Poly.one(field)
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    inv = field.one / r0.lc
    return r0 * inv, s0 * inv, t0 * inv


def poly_lcm(a: Poly, b: Poly) -> Poly:
    return (a * b).exact_div(poly_gcd(a, b)).monic()


def poly_reversal(p: Poly) -> Poly:
    """x^deg(p) p(1/x): the coefficient list read backwards."""
    if p.is_zero():
        raise ValueError("reversal of the zero polynomial")
    return Poly._raw(list(reversed(p.coeffs)), p.field)


def poly_scale_substitute(p: Poly, c) -> Poly:
    """c^deg(p) p(x / c); coefficient k is multiplied by c^(deg p - k)."""
    c = p.field(c)
    if c == 0:
        raise DivisionByZero("scale substitution by zero")
    d = p.degree
    out = []
    power = p.field.one
    for k in range(d, -1, -1):
        out.append(p.coeffs[k] * power)
        power = power * c
    out.reverse()
    return Poly._raw(out, p.field)


# -- text and JSON formats --------------------------------------------------

def poly_format(p: Poly) -> str:
    if p.is_zero():
        return "0"
    terms = []
    for k, c in enumerate(p.coeffs):
        if c == 0:
            continue
        s = p.field.format(c)
        if k == 0:
            terms.append(s)
        elif k == 1:
            terms.append(f"{s}*x")
        else:
            terms.append(f"{s}*x^{k}")
    return " + ".join(terms)


_TERM_RE = re.compile(
    r"^(?:(?P<coef>\d+(?:/\d+)?)(?:\*(?P<x1>x(?:\^(?P<e1>\d+))?))?|(?P<x2>x(?:\^(?P<e2>\d+))?))$"
)


def poly_parse(text: str, field: Field = QQ) -> Poly:
    """Parse ``"c0 + c1*x + c2*x^2"`` style text; signs and ``-`` allowed."""
    if not isinstance(text, str):
        raise ParseError(f"expected polynomial text, got {type(text).__name__}")
    s = text.replace("−", "-").replace(" ", "").replace("λ", "x").replace("**", "^")
    if not s:
        raise ParseError("empty polynomial")
    s = s.replace("+-", "-").replace("-+", "-")
    pieces = re.findall(r"[+-]?[^+-]+", s)
    if "".join(pieces) != s:
        raise ParseError(f"cannot parse polynomial {text!r}")
    acc: dict[int, object] = {}
    for piece in pieces:
        sign = -1 if piece[0] == "-" else 1
        body = piece.lstrip("+-")
        m = _TERM_RE.match(body)
        if m is None:
            raise ParseError(f"bad term {piece!r} in {text!r}")
        if m.group("x2") is not None:
            coef, e = field.one, int(m.group("e2") or 1)
        else:
            coef = field.parse(m.group("coef"))
            e = 0 if m.group("x1") is None else int(m.group("e1") or 1)
        acc[e] = acc.get(e, field.zero) + coef * sign
    deg = max(acc)
    return Poly([acc.get(k, field.zero) for k in range(deg + 1)], field)


def poly_to_json(p: Poly) -> list[str]:
    return [p.field.format(c) for c in p.coeffs]


def poly_from_json(data, field: Field) -> Poly:
    if not isinstance(data, list):
        raise ParseError("polynomial JSON must be a coefficient array")
    return Poly([field.parse(str(c)) for c in data], field)
