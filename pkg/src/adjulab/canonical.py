"""Smith normal form over F[x] and the similarity invariants built on it."""
from __future__ import annotations

from dataclasses import dataclass

from . import checks
from .errors import NotMonic, NotSquare
from .factor import DEFAULT_DEGREE_CAP, poly_factor, poly_sort_key
from .matrix import Matrix, block_diag, lambda_minus
from .poly import Poly


@dataclass(frozen=True)
class SmithForm:
    diagonal: tuple  # nonzero monic d_1 | d_2 | ... | d_r
    rank: int
    U: Matrix | None = None
    V: Matrix | None = None

    def as_matrix(self, shape: tuple[int, int]) -> Matrix:
        field = self.diagonal[0].field if self.diagonal else None
        rows, cols = shape
        out = [[Poly.zero(field) for _ in range(cols)] for _ in range(rows)]
        for i, d in enumerate(self.diagonal):
            out[i][i] = d
        return Matrix._raw(out, field, True)


@dataclass(frozen=True)
class ElementaryDivisor:
    base: Poly
    exponent: int

    @property
    def poly(self) -> Poly:
        return self.base**self.exponent

    @property
    def degree(self) -> int:
        return self.base.degree * self.exponent

    def sort_key(self):
        return (poly_sort_key(self.base), self.exponent)


def smith_normal_form(M: Matrix, with_transforms: bool = False) -> SmithForm:
    """Diagonalize a polynomial matrix by unimodular row and column operations.

    Pivot: the nonzero entry of least degree in the active block, ties
    broken by smallest row then column.  With ``with_transforms`` the
    returned U, V satisfy ``U * M * V == diag``.
    """
    field = M.field
    if not M.is_poly:
        M = M.map(lambda e: Poly.const(e, field), poly=True)
    m, n = M.shape
    W = [list(r) for r in M.rows]
    zero, one = Poly.zero(field), Poly.one(field)
    U = [[one if i == j else zero for j in range(m)] for i in range(m)] if with_transforms else None
    V = [[one if i == j else zero for j in range(n)] for i in range(n)] if with_transforms else None

    def row_axpy(dst, src, q):  # row dst -= q * row src
        Wd, Ws = W[dst], W[src]
        for j in range(n):
            if Ws[j]:
                Wd[j] = Wd[j] - q * Ws[j]
        if U is not None:
            Ud, Us = U[dst], U[src]
            for j in range(m):
                if Us[j]:
                    Ud[j] = Ud[j] - q * Us[j]

    def col_axpy(dst, src, q):  # col dst -= q * col src
        for i in range(m):
            if W[i][src]:
                W[i][dst] = W[i][dst] - q * W[i][src]
        if V is not None:
            for i in range(n):
                if V[i][src]:
                    V[i][dst] = V[i][dst] - q * V[i][src]

    diagonal = []
    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    e = W[i][j]
                    if e and (best is None or e.degree < best[0]):
                        best = (e.degree, i, j)
            if best is None:
                break
            _, i, j = best
            if i != t:
                W[t], W[i] = W[i], W[t]
                if U is not None:
                    U[t], U[i] = U[i], U[t]
            if j != t:
                for row in W:
                    row[t], row[j] = row[j], row[t]
                if V is not None:
                    for row in V:
                        row[t], row[j] = row[j], row[t]
            piv = W[t][t]
            clean = True
            for i in range(t + 1, m):
                if W[i][t]:
                    q, r = divmod(W[i][t], piv)
                    row_axpy(i, t, q)
                    clean = clean and r.is_zero()
            for j in range(t + 1, n):
                if W[t][j]:
                    q, r = divmod(W[t][j], piv)
                    col_axpy(j, t, q)
                    clean = clean and r.is_zero()
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if W[i][j] and W[i][j] % piv),
                None,
            )
            if bad is None:
                break
            row_axpy(t, bad, -one)
        if best is None:
            break
        inv = field.one / W[t][t].lc
        if inv != 1:
            W[t] = [e * inv for e in W[t]]
            if U is not None:
                U[t] = [e * inv for e in U[t]]
        diagonal.append(W[t][t])

    checks.check_divisibility(diagonal)
    if with_transforms:
        return SmithForm(tuple(diagonal), len(diagonal), Matrix._raw(U, field, True), Matrix._raw(V, field, True))
    return SmithForm(tuple(diagonal), len(diagonal))


def invariant_factors(A: Matrix) -> list[Poly]:
    """Nonconstant invariant factors of A, in divisibility order."""
    if not A.is_square():
        raise NotSquare(f"{A.shape} is not square")
    if A.nrows == 0:
        return []
    return [d for d in smith_normal_form(lambda_minus(A)).diagonal if d.degree > 0]


def elementary_divisors_from_invariants(factors: list[Poly], degree_cap: int = DEFAULT_DEGREE_CAP):
    if not factors:
        return []
    out = []
    # every invariant factor divides the last one, so one factorization suffices
    for base, _ in poly_factor(factors[-1], degree_cap):
        for d in factors:
            e = 0
            while True:
                q, r = divmod(d, base)
                if r:
                    break
                d, e = q, e + 1
            if e:
                out.append(ElementaryDivisor(base, e))
    out.sort(key=ElementaryDivisor.sort_key)
    return out


def elementary_divisors(A: Matrix, degree_cap: int = DEFAULT_DEGREE_CAP) -> list[ElementaryDivisor]:
    return elementary_divisors_from_invariants(invariant_factors(A), degree_cap)


def invariants_from_elementary(divisors: list[ElementaryDivisor], n: int | None = None) -> list[Poly]:
    """Regroup elementary divisors into invariant factors (largest powers last)."""
    if not divisors:
        return []
    field = divisors[0].base.field
    by_base: dict = {}
    for ed in divisors:
        by_base.setdefault(ed.base, []).append(ed.exponent)
    length = max(len(v) for v in by_base.values())
    out = [Poly.one(field) for _ in range(length)]
    for base, exps in by_base.items():
        exps.sort()
        for k, e in enumerate(exps):
            out[length - len(exps) + k] = out[length - len(exps) + k] * base**e
    return out


def companion(p: Poly) -> Matrix:
    """Companion matrix: ones on the subdiagonal, -p_0, ..., -p_{d-1} down the last column."""
    if not p.is_monic():
        raise NotMonic(f"{p} is not monic")
    d = p.degree
    if d < 1:
        raise ValueError("companion matrix needs degree >= 1")
    field = p.field
    rows = [[field.zero] * d for _ in range(d)]
    for i in range(1, d):
        rows[i][i - 1] = field.one
    for i in range(d):
        rows[i][d - 1] = -p.coeffs[i]
    return Matrix._raw(rows, field, False)


def rcf(A: Matrix, blocks: str = "invariant", degree_cap: int = DEFAULT_DEGREE_CAP) -> Matrix:
    """Rational canonical form of A.

    ``blocks="invariant"`` gives the Frobenius form, one companion block
    per nonconstant invariant factor.  ``blocks="elementary"`` gives the
    primary form with one companion block per elementary divisor.
    """
    if blocks == "invariant":
        polys = invariant_factors(A)
    elif blocks == "elementary":
        polys = [ed.poly for ed in elementary_divisors(A, degree_cap)]
    else:
        raise ValueError(f"unknown block kind {blocks!r}")
    if not polys:
        return Matrix.zeros(0, 0, A.field)
    return block_diag(*[companion(p) for p in polys])


def is_nonderogatory(A: Matrix) -> bool:
    return len(invariant_factors(A)) <= 1
