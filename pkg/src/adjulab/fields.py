"""Exact scalar fields: the rationals and prime fields GF(p).

Rationals are :class:`fractions.Fraction` values (always reduced, positive
denominator).  Residues mod p are :class:`Mod` instances bound to their
:class:`PrimeField`.  Mixing elements of different fields raises
:class:`~adjulab.errors.FieldMismatch`; plain ``int`` operands are coerced
into whichever field they meet.
"""
from __future__ import annotations

import functools
import re
from fractions import Fraction
from numbers import Integral

from .errors import DivisionByZero, FieldMismatch, ParseError

_MINUS = "−"
_SCALAR_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*([+-]?\d+)\s*)?$")


def _split_scalar(text: str) -> tuple[int, int]:
    if not isinstance(text, str):
        raise ParseError(f"expected scalar text, got {type(text).__name__}")
    match = _SCALAR_RE.match(text.replace(_MINUS, "-"))
    if match is None:
        raise ParseError(f"not a scalar: {text!r}")
    num = int(match.group(1))
    den = int(match.group(2)) if match.group(2) is not None else 1
    if den == 0:
        raise DivisionByZero(f"zero denominator in {text!r}")
    return num, den


class Field:
    """Common interface of the two supported field kinds."""

    kind: str
    characteristic: int
    zero: object
    one: object

    def __call__(self, value):
        raise NotImplementedError

    def contains(self, x) -> bool:
        raise NotImplementedError

    def parse(self, text: str):
        num, den = _split_scalar(text)
        return self.div(self(num), self(den))

    def format(self, x) -> str:
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError

    def inv(self, a):
        a = self(a)
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return self.one / a

    def div(self, a, b):
        a, b = self(a), self(b)
        if b == 0:
            raise DivisionByZero("division by zero")
        return a / b


class RationalField(Field):
    kind = "rational"
    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, value):
        if isinstance(value, Fraction):
            return value
        if isinstance(value, Integral):
            return Fraction(int(value))
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, Mod):
            raise FieldMismatch(f"{value!r} is not a rational")
        raise TypeError(f"cannot coerce {value!r} into Q")

    def contains(self, x) -> bool:
        return isinstance(x, (Fraction, Integral)) and not isinstance(x, bool)

    def format(self, x) -> str:
        x = self(x)
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"

    def to_json(self) -> dict:
        return {"kind": "rational"}

    def __repr__(self):
        return "QQ"

    def __reduce__(self):
        return "QQ"


QQ = RationalField()


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class PrimeField(Field):
    """GF(p) for a prime p < 2**31.  Obtain instances through :func:`GF`."""

    kind = "gfp"

    def __init__(self, p: int):
        if not (2 <= p < 2**31) or not is_prime(p):
            raise ValueError(f"GF(p) needs a prime 2 <= p < 2**31, got {p}")
        self.p = p
        self.characteristic = p
        self.zero = Mod(0, self)
        self.one = Mod(1, self)

    def __call__(self, value):
        if isinstance(value, Mod):
            if value.field is not self:
                raise FieldMismatch(f"{value!r} does not belong to {self!r}")
            return value
        if isinstance(value, Integral):
            return Mod(int(value) % self.p, self)
        if isinstance(value, Fraction):
            return self.div(self(value.numerator), self(value.denominator))
        if isinstance(value, str):
            return self.parse(value)
        raise TypeError(f"cannot coerce {value!r} into {self!r}")

    def contains(self, x) -> bool:
        return isinstance(x, Mod) and x.field is self

    def format(self, x) -> str:
        return str(self(x).v)

    def to_json(self) -> dict:
        return {"kind": "gfp", "p": self.p}

    def elements(self):
        return [Mod(v, self) for v in range(self.p)]

    def __repr__(self):
        return f"GF({self.p})"

    def __reduce__(self):
        return (GF, (self.p,))


@functools.lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


class Mod:
    """A residue class modulo a prime, canonical representative in [0, p)."""

    __slots__ = ("v", "field")

    def __init__(self, v: int, field: PrimeField):
        self.v = v
        self.field = field

    def _other(self, other):
        t = type(other)
        if t is Mod and other.field is self.field:
            return other.v
        if t is int:
            return other % self.field.p
        if isinstance(other, Mod):
            if other.field is not self.field:
                raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
            return other.v
        if isinstance(other, Integral):
            return int(other) % self.field.p
        if isinstance(other, Fraction):
            raise FieldMismatch(f"cannot mix {self.field!r} with a rational")
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Mod((self.v + o) % self.field.p, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Mod((self.v - o) % self.field.p, self.field)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Mod((o - self.v) % self.field.p, self.field)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Mod(self.v * o % self.field.p, self.field)

    __rmul__ = __mul__

    def __neg__(self):
        return Mod(-self.v % self.field.p, self.field)

    def __pos__(self):
        return self

    def _inverse(self, v):
        if v == 0:
            raise DivisionByZero(f"inverse of zero in {self.field!r}")
        return pow(v, -1, self.field.p)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Mod(self.v * self._inverse(o) % self.field.p, self.field)

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Mod(o * self._inverse(self.v) % self.field.p, self.field)

    def __pow__(self, e: int):
        if e < 0:
            return Mod(pow(self._inverse(self.v), -e, self.field.p), self.field)
        return Mod(pow(self.v, e, self.field.p), self.field)

    def __eq__(self, other):
        t = type(other)
        if t is Mod:
            return other.field is self.field and other.v == self.v
        if t is int:
            return other % self.field.p == self.v
        if isinstance(other, Mod):
            return other.field is self.field and other.v == self.v
        if isinstance(other, Integral):
            return int(other) % self.field.p == self.v
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.field.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"Mod({self.v}, {self.field.p})"

    def __str__(self):
        return str(self.v)


def field_of(x) -> Field:
    """Field an element lives in; Python ints and Fractions count as rational."""
    if isinstance(x, Mod):
        return x.field
    if isinstance(x, (Fraction, Integral)):
        return QQ
    raise TypeError(f"{x!r} is not a field element")


def parse_field(spec: dict) -> Field:
    """Inverse of ``Field.to_json``."""
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ParseError(f"bad field spec: {spec!r}")
    if spec["kind"] == "rational":
        return QQ
    if spec["kind"] == "gfp":
        try:
            return GF(int(spec["p"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad prime field spec: {spec!r}") from exc
    raise ParseError(f"unknown field kind {spec['kind']!r}")


_OPS = {"add", "sub", "mul", "neg", "div", "inv"}


def scalar_arith(op: str, a, b=None):
    """Apply one field operation; both operands must share a field."""
    if op not in _OPS:
        raise ValueError(f"unknown op {op!r}")
    field = field_of(a)
    if op in ("neg", "inv"):
        a = field(a)
        return -a if op == "neg" else field.inv(a)
    if isinstance(a, Integral) and isinstance(b, Mod):
        field = b.field
    elif not isinstance(b, Integral) and field_of(b) is not field:
        raise FieldMismatch(f"{a!r} and {b!r} live in different fields")
    a, b = field(a), field(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    return field.div(a, b)


def scalar_parse(text: str, field: Field):
    return field.parse(text)
