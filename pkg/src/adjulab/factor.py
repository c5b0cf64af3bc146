"""Squarefree decomposition and complete factorization over Q and GF(p).

GF(p): squarefree split, distinct-degree split, then Cantor-Zassenhaus
equal-degree splitting driven by a seeded RNG.

Q: reduce to primitive integer polynomials, strip rational roots, and find
the remaining factors by Kronecker's interpolation search.  Candidate
factor degrees are first pruned with the degree patterns of the
polynomial modulo a handful of small primes, which certifies most
irreducible inputs without any search.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from sympy import factorint

from .errors import DegreeCapExceeded, VerificationError
from .fields import QQ, GF, Mod, PrimeField
from .poly import Poly, poly_derivative, poly_gcd

DEFAULT_DEGREE_CAP = 12


@dataclass(frozen=True)
class Factorization:
    unit: object
    factors: tuple  # ((monic irreducible Poly, exponent), ...)

    def expand(self) -> Poly:
        field = self.factors[0][0].field if self.factors else None
        if field is None:
            from .fields import field_of
            field = field_of(self.unit)
        out = Poly.const(self.unit, field)
        for base, e in self.factors:
            out = out * base**e
        return out

    def __iter__(self):
        return iter(self.factors)


def poly_sort_key(p: Poly):
    def one(c):
        if isinstance(c, Mod):
            return (c.v, 1)
        return (c.numerator, c.denominator)

    return (p.degree, tuple(one(c) for c in reversed(p.coeffs)))


# -- squarefree -------------------------------------------------------------

def _pth_root(c: Poly) -> Poly:
    p = c.field.characteristic
    return Poly._raw(list(c.coeffs[::p]), c.field)


def poly_squarefree(p: Poly) -> list[tuple[Poly, int]]:
    """Split monic ``p`` into pairwise coprime squarefree factors by multiplicity."""
    if p.degree < 1:
        raise ValueError("squarefree decomposition needs degree >= 1")
    p = p.monic()
    out: list[tuple[Poly, int]] = []
    char = p.field.characteristic
    c = poly_gcd(p, poly_derivative(p))
    w = p.exact_div(c)
    i = 1
    while w.degree > 0:
        y = poly_gcd(w, c)
        fac = w.exact_div(y)
        if fac.degree > 0:
            out.append((fac.monic(), i))
        w = y
        c = c.exact_div(y)
        i += 1
    if c.degree > 0:
        # only reachable in characteristic p: c(x) = g(x^p)
        for g, e in poly_squarefree(_pth_root(c.monic())):
            out.append((g, e * char))
    out.sort(key=lambda t: (t[1], poly_sort_key(t[0])))
    return out


def squarefree_part(p: Poly) -> Poly:
    """Product of the distinct monic irreducible factors of ``p``."""
    if p.is_zero():
        raise ValueError("squarefree part of zero")
    out = Poly.one(p.field)
    if p.degree < 1:
        return out
    for g, _ in poly_squarefree(p):
        out = out * g
    return out


# -- GF(p) --------------------------------------------------------------------

def _powmod(base: Poly, e: int, mod: Poly) -> Poly:
    result = Poly.one(base.field)
    base = base % mod
    while e:
        if e & 1:
            result = (result * base) % mod
        e >>= 1
        if e:
            base = (base * base) % mod
    return result


def _ddf(f: Poly) -> list[tuple[Poly, int]]:
    field = f.field
    x = Poly.x(field)
    h = x
    out = []
    i = 1
    rest = f
    while rest.degree >= 2 * i:
        h = _powmod(h, field.p, rest)
        g = poly_gcd(h - x, rest)
        if not g.is_one():
            out.append((g, i))
            rest = rest.exact_div(g)
            h = h % rest
        i += 1
    if rest.degree > 0:
        out.append((rest, rest.degree))
    return out


def _edf(f: Poly, d: int, rng: random.Random) -> list[Poly]:
    n = f.degree
    if n == d:
        return [f]
    field = f.field
    p = field.p
    while True:
        a = Poly([rng.randrange(p) for _ in range(n)], field)
        if a.degree < 1:
            continue
        if p == 2:
            t, s = a, a
            for _ in range(d - 1):
                s = (s * s) % f
                t = t + s
            b = t
        else:
            b = _powmod(a, (p**d - 1) // 2, f) - 1
        if b.is_zero():
            continue
        g = poly_gcd(b, f)
        if 0 < g.degree < n:
            return _edf(g, d, rng) + _edf(f.exact_div(g), d, rng)


def _factor_gfp_squarefree(f: Poly, rng: random.Random) -> list[Poly]:
    out = []
    for g, d in _ddf(f):
        out.extend(h.monic() for h in _edf(g, d, rng))
    return out


# -- Z[x] helpers (int lists, low to high) ------------------------------------

def _ieval(F: list[int], x: int) -> int:
    acc = 0
    for c in reversed(F):
        acc = acc * x + c
    return acc


def _idivexact(F: list[int], G: list[int]) -> list[int] | None:
    """F / G in Z[x] if G divides F there, else None."""
    rem = list(F)
    dg = len(G) - 1
    if len(rem) - 1 < dg:
        return None
    q = [0] * (len(rem) - dg)
    lead = G[-1]
    for k in range(len(rem) - 1 - dg, -1, -1):
        c, r = divmod(rem[k + dg], lead)
        if r:
            return None
        q[k] = c
        if c:
            for i in range(dg + 1):
                rem[k + i] -= c * G[i]
    if any(rem):
        return None
    return q


def _primitive(F: list[int]) -> list[int]:
    g = 0
    for c in F:
        g = gcd(g, c)
    F = [c // g for c in F]
    if F[-1] < 0:
        F = [-c for c in F]
    return F


def _to_int_poly(p: Poly) -> list[int]:
    den = 1
    for c in p.coeffs:
        den = lcm(den, c.denominator)
    return _primitive([int(c * den) for c in p.coeffs])


def _divisors(n: int) -> list[int]:
    n = abs(n)
    if n == 0:
        raise ValueError("divisors of 0")
    divs = [1]
    for prime, e in factorint(n).items():
        divs = [d * prime**k for d in divs for k in range(e + 1)]
    return sorted(divs)


_SMALL_PRIMES = [q for q in range(3, 400) if all(q % r for r in range(2, int(q**0.5) + 1))]


def _possible_degrees(F: list[int], good_primes: int = 16) -> set[int]:
    """Degrees a proper factor of F over Z may have, judged mod small primes."""
    n = len(F) - 1
    possible = set(range(1, n))
    seen = 0
    for q in _SMALL_PRIMES:
        if F[-1] % q == 0:
            continue
        field = GF(q)
        fq = Poly([c % q for c in F], field)
        if poly_gcd(fq, fq.derivative()).degree > 0:
            continue
        degrees = []
        for g, d in _ddf(fq.monic()):
            degrees.extend([d] * (g.degree // d))
        sums = {0}
        for d in degrees:
            sums |= {s + d for s in sums}
        possible &= sums
        seen += 1
        if not possible or seen >= good_primes:
            break
    return possible


def _rational_roots(F: list[int]) -> list[Fraction]:
    """All rational roots of a squarefree primitive integer polynomial."""
    if F[0] == 0:
        rest = F[1:]
        return [Fraction(0)] + (_rational_roots(rest) if len(rest) > 1 else [])
    n = len(F) - 1
    bound = 1 + max(abs(Fraction(c, F[-1])) for c in F[:-1])
    roots = []
    for b in _divisors(F[-1]):
        for a in _divisors(F[0]):
            if Fraction(a, b) > bound:
                break
            if gcd(a, b) != 1:
                continue
            for sa in (a, -a):
                # b^n F(sa/b)
                if sum(F[k] * sa**k * b ** (n - k) for k in range(n + 1)) == 0:
                    roots.append(Fraction(sa, b))
    return roots


def _kronecker_search(F: list[int], d: int) -> list[int] | None:
    """A factor of degree exactly d of the primitive integer poly F, or None.

    Depth-first over the values the factor can take at d+1 integer nodes.
    Newton divided differences of an integer polynomial at integer nodes
    are integers, which prunes each partial value tuple as soon as a
    difference fails to divide.
    """
    pool = []
    x = 0
    while len(pool) < d + 7:
        for cand in ((0,) if x == 0 else (x, -x)):
            v = _ieval(F, cand)
            if v != 0:
                pool.append((cand, v, len(_divisors(v))))
        x += 1
    pool.sort(key=lambda t: (t[2], abs(t[0])))
    nodes, extra = pool[: d + 1], pool[d + 1:]
    xs = [t[0] for t in nodes]
    choices = []
    for i, (_, v, _) in enumerate(nodes):
        divs = _divisors(v)
        # fix the sign of the factor through its value at the first node
        choices.append(divs if i == 0 else [s * t for t in divs for s in (1, -1)])
    lead = F[-1]

    def newton_to_coeffs(newton: list[int]) -> list[int]:
        coeffs = [newton[d]]
        for k in range(d - 1, -1, -1):
            nxt = [0] * (len(coeffs) + 1)
            for i, c in enumerate(coeffs):
                nxt[i + 1] += c
                nxt[i] -= c * xs[k]
            nxt[0] += newton[k]
            coeffs = nxt
        return coeffs

    def dfs(level: int, prev_diag: list[int], newton: list[int]):
        if level == d + 1:
            if newton[d] == 0 or lead % newton[d]:
                return None
            G = newton_to_coeffs(newton)
            for cx, cv, _ in extra:
                gv = _ieval(G, cx)
                if gv == 0 or cv % gv:
                    return None
            return G if _idivexact(F, G) is not None else None
        for v in choices[level]:
            diag = [v]
            for j in range(1, level + 1):
                num = diag[-1] - prev_diag[j - 1]
                den = xs[level] - xs[level - j]
                if num % den:
                    break
                diag.append(num // den)
            else:
                found = dfs(level + 1, diag, newton + [diag[level]])
                if found is not None:
                    return found
        return None

    found = dfs(0, [], [])
    return _primitive(found) if found is not None else None


def _factor_int_squarefree(F: list[int], cap: int) -> list[list[int]]:
    """Irreducible factors of a squarefree primitive integer polynomial."""
    if len(F) <= 2:
        return [F]
    out = []
    possible = _possible_degrees(F)
    if 1 in possible:
        for r in _rational_roots(F):
            lin = [-r.numerator, r.denominator]
            F = _idivexact(F, lin)
            out.append(lin)
        if len(F) <= 2:
            if len(F) == 2:
                out.append(F)
            return out
        possible = _possible_degrees(F)
    n = len(F) - 1
    if n > cap:
        raise DegreeCapExceeded(f"degree {n} component exceeds the cap of {cap}")
    for d in sorted(possible):
        if d > n // 2 or d < 2:
            continue
        G = _kronecker_search(F, d)
        if G is not None:
            H = _idivexact(F, G)
            return out + _factor_int_squarefree(G, cap) + _factor_int_squarefree(H, cap)
    return out + [F]


def _factor_q_squarefree(f: Poly, cap: int) -> list[Poly]:
    return [Poly([Fraction(c) for c in G], QQ).monic() for G in _factor_int_squarefree(_to_int_poly(f), cap)]


def poly_factor(p: Poly, degree_cap: int = DEFAULT_DEGREE_CAP, seed: int = 0) -> Factorization:
    """Complete factorization ``unit * prod(base**e)`` into monic irreducibles."""
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    unit = p.lc
    factors = []
    if p.degree >= 1:
        rng = random.Random(seed)
        for sq, e in poly_squarefree(p):
            if isinstance(p.field, PrimeField):
                bases = _factor_gfp_squarefree(sq, rng)
            else:
                bases = _factor_q_squarefree(sq, degree_cap)
            factors.extend((b, e) for b in bases)
    factors.sort(key=lambda t: (poly_sort_key(t[0]), t[1]))
    result = Factorization(unit, tuple(factors))
    if result.expand() != p:
        raise VerificationError(f"factorization of {p} does not multiply back")
    return result


def poly_is_prime_power(p: Poly, degree_cap: int = DEFAULT_DEGREE_CAP) -> tuple[Poly, int] | None:
    """``(g, e)`` with ``p == g**e`` and g irreducible, or None if no such pair exists."""
    if p.degree < 1 or not p.is_monic():
        raise ValueError("prime-power test needs a monic polynomial of degree >= 1")
    fac = poly_factor(p, degree_cap)
    if len(fac.factors) == 1:
        return fac.factors[0]
    return None


def is_irreducible(p: Poly, degree_cap: int = DEFAULT_DEGREE_CAP) -> bool:
    if p.degree < 1:
        return False
    fac = poly_factor(p, degree_cap)
    return len(fac.factors) == 1 and fac.factors[0][1] == 1


def roots_in_field(p: Poly, degree_cap: int = DEFAULT_DEGREE_CAP) -> list[tuple[object, int]]:
    """Roots of p lying in its coefficient field, with multiplicities."""
    out = []
    for base, e in poly_factor(p, degree_cap):
        if base.degree == 1:
            out.append((-base.coeffs[0], e))
    return out


def splits(p: Poly, degree_cap: int = DEFAULT_DEGREE_CAP) -> bool:
    return all(base.degree == 1 for base, _ in poly_factor(p, degree_cap))
