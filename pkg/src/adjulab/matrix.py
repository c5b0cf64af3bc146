"""Dense exact matrices over a field F or over F[x].

Polynomial matrices (entries :class:`~adjulab.poly.Poly`) share the class;
their determinant uses fraction-free Bareiss elimination, scalar matrices
use Gaussian elimination.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import checks
from .errors import FieldMismatch, NotAnEigenvalue, NotSquare, SingularMatrix
from .fields import QQ, Field
from .poly import Poly


class Matrix:
    __slots__ = ("rows", "field", "is_poly")

    def __init__(self, rows, field: Field = QQ, poly: bool | None = None):
        rows = [list(r) for r in rows]
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged matrix rows")
        if poly is None:
            poly = any(isinstance(e, Poly) for r in rows for e in r)
        if poly:
            def conv(e):
                if isinstance(e, Poly):
                    if e.field is not field:
                        raise FieldMismatch(f"entry over {e.field!r} in a matrix over {field!r}")
                    return e
                return Poly.const(e, field)
        else:
            conv = field
        self.rows = tuple(tuple(conv(e) for e in r) for r in rows)
        self.field = field
        self.is_poly = poly

    @classmethod
    def _raw(cls, rows, field: Field, poly: bool) -> "Matrix":
        m = object.__new__(cls)
        m.rows = tuple(tuple(r) for r in rows)
        m.field = field
        m.is_poly = poly
        return m

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> "Matrix":
        return cls._raw([[field.one if i == j else field.zero for j in range(n)] for i in range(n)], field, False)

    @classmethod
    def zeros(cls, r: int, c: int, field: Field = QQ) -> "Matrix":
        return cls._raw([[field.zero] * c for _ in range(r)], field, False)

    @classmethod
    def diag(cls, entries, field: Field = QQ) -> "Matrix":
        entries = [field(e) for e in entries]
        n = len(entries)
        return cls._raw([[entries[i] if i == j else field.zero for j in range(n)] for i in range(n)], field, False)

    @classmethod
    def from_columns(cls, cols, field: Field = QQ) -> "Matrix":
        cols = [list(c) for c in cols]
        return cls([[c[i] for c in cols] for i in range(len(cols[0]))], field)

    # -- shape and access -------------------------------------------------
    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def row(self, i: int) -> tuple:
        return self.rows[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    @property
    def T(self) -> "Matrix":
        return Matrix._raw(list(zip(*self.rows)) if self.rows else [], self.field, self.is_poly)

    def _zero(self):
        return Poly.zero(self.field) if self.is_poly else self.field.zero

    def _one(self):
        return Poly.one(self.field) if self.is_poly else self.field.one

    def identity_like(self) -> "Matrix":
        n = self.nrows
        z, o = self._zero(), self._one()
        return Matrix._raw([[o if i == j else z for j in range(n)] for i in range(n)], self.field, self.is_poly)

    def is_zero(self) -> bool:
        return all(e == 0 for r in self.rows for e in r)

    def delete(self, i: int, j: int) -> "Matrix":
        """The submatrix with row i and column j removed."""
        return Matrix._raw(
            [r[:j] + r[j + 1:] for k, r in enumerate(self.rows) if k != i], self.field, self.is_poly
        )

    def submatrix(self, rows, cols) -> "Matrix":
        return Matrix._raw([[self.rows[i][j] for j in cols] for i in rows], self.field, self.is_poly)

    def map(self, f, poly: bool | None = None) -> "Matrix":
        return Matrix._raw([[f(e) for e in r] for r in self.rows], self.field,
                           self.is_poly if poly is None else poly)

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: "Matrix"):
        if other.field is not self.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix._raw([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                           self.field, self.is_poly or other.is_poly)

    def __neg__(self) -> "Matrix":
        return self.map(lambda e: -e)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c) -> "Matrix":
        return self.map(lambda e: e * c, poly=self.is_poly or isinstance(c, Poly))

    def __mul__(self, other):
        if not isinstance(other, Matrix):
            return self.scale(other)
        self._check(other)
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        poly = self.is_poly or other.is_poly
        zero = Poly.zero(self.field) if poly else self.field.zero
        cols = other.T.rows
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = zero
                for a, b in zip(r, c):
                    if a != 0 and b != 0:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return Matrix._raw(out, self.field, poly)

    __matmul__ = __mul__

    def __rmul__(self, c):
        return self.scale(c)

    def apply(self, v) -> tuple:
        """Matrix times column vector."""
        if len(v) != self.ncols:
            raise ValueError("vector length mismatch")
        zero = self._zero()
        out = []
        for r in self.rows:
            acc = zero
            for a, b in zip(r, v):
                acc = acc + a * b
            out.append(acc)
        return tuple(out)

    def rapply(self, v) -> tuple:
        """Row vector times matrix, i.e. (v^T A)^T."""
        return self.T.apply(v)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field is other.field and self.rows == other.rows

    def __hash__(self):
        return hash((self.rows, repr(self.field)))

    def __repr__(self):
        fmt = str if self.is_poly else self.field.format
        body = "; ".join(", ".join(fmt(e) for e in r) for r in self.rows)
        return f"Matrix([{body}], {self.field!r})"

    def tolist(self) -> list[list]:
        return [list(r) for r in self.rows]


def block_diag(*blocks: Matrix) -> Matrix:
    field = blocks[0].field
    n = sum(b.nrows for b in blocks)
    rows = [[field.zero] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i in range(b.nrows):
            for j in range(b.ncols):
                rows[off + i][off + j] = b.rows[i][j]
        off += b.nrows
    return Matrix._raw(rows, field, False)


def lambda_minus(A: Matrix) -> Matrix:
    """The polynomial matrix xI - A."""
    if not A.is_square():
        raise NotSquare(f"{A.shape} is not square")
    f = A.field
    x = Poly.x(f)
    n = A.nrows
    return Matrix._raw(
        [[(x if i == j else Poly.zero(f)) - A.rows[i][j] for j in range(n)] for i in range(n)], f, True
    )


# -- vectors ------------------------------------------------------------------

def dot(u, v):
    acc = 0
    for a, b in zip(u, v):
        acc = acc + a * b
    return acc


def outer(u, v, field: Field) -> Matrix:
    return Matrix._raw([[a * b for b in v] for a in u], field, False)


def is_zero_vector(v) -> bool:
    return all(e == 0 for e in v)


# -- determinant, rank, kernels -------------------------------------------------

def _det_gauss(A: Matrix):
    field = A.field
    M = [list(r) for r in A.rows]
    n = len(M)
    det = field.one
    for k in range(n):
        piv = next((i for i in range(k, n) if M[i][k] != 0), None)
        if piv is None:
            return field.zero
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
            det = -det
        pk = M[k][k]
        det = det * pk
        inv = field.one / pk
        for i in range(k + 1, n):
            f = M[i][k] * inv
            if f != 0:
                Mi, Mk = M[i], M[k]
                for j in range(k + 1, n):
                    Mi[j] = Mi[j] - f * Mk[j]
    return det


def _det_bareiss(A: Matrix) -> Poly:
    M = [list(r) for r in A.rows]
    n = len(M)
    one = Poly.one(A.field)
    if n == 0:
        return one
    sign = 1
    prev = one
    for k in range(n - 1):
        if M[k][k].is_zero():
            piv = next((i for i in range(k + 1, n) if not M[i][k].is_zero()), None)
            if piv is None:
                return Poly.zero(A.field)
            M[k], M[piv] = M[piv], M[k]
            sign = -sign
        pk = M[k][k]
        for i in range(k + 1, n):
            Mi, Mk = M[i], M[k]
            mik = Mi[k]
            for j in range(k + 1, n):
                Mi[j] = (Mi[j] * pk - mik * Mk[j]).exact_div(prev)
            Mi[k] = Poly.zero(A.field)
        prev = pk
    return M[n - 1][n - 1] if sign == 1 else -M[n - 1][n - 1]


def mat_det(A: Matrix):
    if not A.is_square():
        raise NotSquare(f"{A.shape} is not square")
    return _det_bareiss(A) if A.is_poly else _det_gauss(A)


def mat_adjugate(A: Matrix) -> Matrix:
    """Adjugate from cofactors: entry (i, j) is (-1)^(i+j) times minor (j, i)."""
    if not A.is_square():
        raise NotSquare(f"{A.shape} is not square")
    n = A.nrows
    if n == 1:
        adj = A.identity_like()
    else:
        adj = Matrix._raw(
            [[mat_det(A.delete(j, i)) * (1 if (i + j) % 2 == 0 else -1) for j in range(n)] for i in range(n)],
            A.field, A.is_poly,
        )
    checks.check_adjugate(A, adj, mat_det(A))
    return adj


def rref(A: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    field = A.field
    M = [list(r) for r in A.rows]
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = field.one / M[r][c]
        M[r] = [e * inv for e in M[r]]
        for i in range(rows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return Matrix._raw(M, field, False), pivots


def mat_rank(A: Matrix) -> int:
    return len(rref(A)[1])


def null_space_right(A: Matrix) -> list[tuple]:
    """Basis of {x : A x = 0}, itself in reduced row echelon form."""
    field = A.field
    R, pivots = rref(A)
    free = [c for c in range(A.ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [field.zero] * A.ncols
        v[f] = field.one
        for i, pc in enumerate(pivots):
            v[pc] = -R.rows[i][f]
        basis.append(v)
    if not basis:
        return []
    B, _ = rref(Matrix._raw(basis, field, False))
    return [tuple(r) for r in B.rows]


def null_space_left(A: Matrix) -> list[tuple]:
    """Basis of {y : y^T A = 0}."""
    return null_space_right(A.T)


def solve(A: Matrix, b) -> tuple | None:
    """One solution of A x = b (free variables zero), or None."""
    field = A.field
    aug = Matrix._raw([list(r) + [bi] for r, bi in zip(A.rows, b)], field, False)
    R, pivots = rref(aug)
    if A.ncols in pivots:
        return None
    x = [field.zero] * A.ncols
    for i, pc in enumerate(pivots):
        x[pc] = R.rows[i][A.ncols]
    return tuple(x)


def mat_inverse(A: Matrix) -> Matrix:
    """Inverse by Gauss-Jordan on [A | I]."""
    if not A.is_square():
        raise NotSquare(f"{A.shape} is not square")
    n = A.nrows
    I = A.identity_like()
    aug = Matrix._raw([list(a) + list(b) for a, b in zip(A.rows, I.rows)], A.field, False)
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrix("matrix is singular")
    return Matrix._raw([r[n:] for r in R.rows], A.field, False)


def hessenberg_form(A: Matrix) -> Matrix:
    """An upper Hessenberg matrix similar to A, by exact elimination."""
    field = A.field
    n = A.nrows
    H = [list(r) for r in A.rows]
    for k in range(n - 2):
        piv = next((i for i in range(k + 1, n) if H[i][k] != 0), None)
        if piv is None:
            continue
        if piv != k + 1:
            H[piv], H[k + 1] = H[k + 1], H[piv]
            for row in H:
                row[piv], row[k + 1] = row[k + 1], row[piv]
        inv = field.one / H[k + 1][k]
        for r in range(k + 2, n):
            if H[r][k] == 0:
                continue
            t = H[r][k] * inv
            # row r -= t * row (k+1), then column (k+1) += t * column r
            H[r] = [a - t * b for a, b in zip(H[r], H[k + 1])]
            for row in H:
                row[k + 1] = row[k + 1] + t * row[r]
    return Matrix._raw(H, field, False)


def _char_poly_hessenberg(A: Matrix) -> Poly:
    field = A.field
    H = hessenberg_form(A).rows
    n = A.nrows
    x = Poly.x(field)
    polys = [Poly.one(field)]
    for m in range(n):
        p = (x - H[m][m]) * polys[m]
        prod = field.one
        for i in range(1, m + 1):
            prod = prod * H[m - i + 1][m - i]
            if prod == 0:
                break
            c = H[m - i][m] * prod
            if c != 0:
                p = p - polys[m - i] * c
        polys.append(p)
    return polys[n]


def char_poly(A: Matrix, method: str = "hessenberg") -> Poly:
    """det(x I - A).  ``method="bareiss"`` expands the polynomial determinant instead."""
    if not A.is_square():
        raise NotSquare(f"{A.shape} is not square")
    if A.is_poly:
        raise ValueError("char_poly needs a scalar matrix")
    if method == "bareiss":
        return mat_det(lambda_minus(A))
    if method != "hessenberg":
        raise ValueError(f"unknown method {method!r}")
    return _char_poly_hessenberg(A)


def mat_power(A: Matrix, k: int) -> Matrix:
    if not A.is_square():
        raise NotSquare(f"{A.shape} is not square")
    if k < 0:
        raise ValueError("negative matrix power")
    result, base = A.identity_like(), A
    while k:
        if k & 1:
            result = result * base
        k >>= 1
        if k:
            base = base * base
    return result


def mat_poly_eval(p: Poly, A: Matrix) -> Matrix:
    """p(A) by Horner's rule."""
    if not A.is_square():
        raise NotSquare(f"{A.shape} is not square")
    I = A.identity_like()
    acc = A.identity_like().scale(A.field.zero)
    for c in reversed(p.coeffs):
        acc = acc * A + I.scale(c)
    return acc


# -- eigenstructure -----------------------------------------------------------------

@dataclass(frozen=True)
class EigenStructure:
    eigenvalue: object
    algebraic_multiplicity: int
    geometric_multiplicity: int
    partial_multiplicities: tuple[int, ...]


def eigen_structure(A: Matrix, lam) -> EigenStructure:
    """Multiplicities of ``lam`` as an eigenvalue of A.

    Partial multiplicities are the exponents of x - lam across the
    invariant factors of xI - A.
    """
    from .canonical import invariant_factors

    lam = A.field(lam)
    p = char_poly(A)
    if p(lam) != 0:
        raise NotAnEigenvalue(f"{A.field.format(lam)} is not an eigenvalue")
    m = p.root_multiplicity(lam)
    n = A.nrows
    g = n - mat_rank(A.identity_like().scale(lam) - A)
    parts = []
    for d in invariant_factors(A):
        if d(lam) == 0:
            parts.append(d.root_multiplicity(lam))
    parts.sort(reverse=True)
    return EigenStructure(lam, m, g, tuple(parts))
