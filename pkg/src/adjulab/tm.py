"""Rank-one adjugate formulas for eigenvalues, and their verifiers.

Conventions used throughout:

* ``B = lam*I - A`` for an eigenvalue ``lam`` of A.
* For a degree-m Taylor coefficient we use ``p.taylor_coefficient(lam, m)``
  which equals the m-th derivative over m! in characteristic zero and stays
  meaningful when m! vanishes in GF(p).
* The denominator of the rank-one formulas is the chain pairing
  ``v^T x`` with ``B^(m-1) x = u``; see :func:`chain_pairing`.
* Indices are 0-based.
"""
from __future__ import annotations

from dataclasses import dataclass

from .canonical import ElementaryDivisor, elementary_divisors
from .errors import (
    AmbiguousPairing,
    GeometricMultiplicityTooHigh,
    NotAnEigenvalue,
    NotEigenvector,
    NotSingular,
    NotSquare,
    SingularMatrix,
    Unsolvable,
    VerificationError,
)
from .factor import DEFAULT_DEGREE_CAP, poly_is_prime_power, roots_in_field
from .fields import Field, scalar_arith
from .matrix import (
    Matrix,
    char_poly,
    dot,
    is_zero_vector,
    mat_adjugate,
    mat_det,
    mat_power,
    mat_rank,
    null_space_left,
    null_space_right,
    outer,
    solve,
)
from .poly import Poly, poly_reversal, poly_scale_substitute


@dataclass(frozen=True)
class RankOneRep:
    """The matrix ``coefficient * u v^T``."""

    u: tuple
    v: tuple
    coefficient: object
    field: Field
    is_zero = False

    def materialize(self) -> Matrix:
        return outer(self.u, self.v, self.field).scale(self.coefficient)


@dataclass(frozen=True)
class ZeroMatrix:
    """Result marker: the adjugate vanishes identically."""

    n: int
    field: Field
    is_zero = True

    @property
    def coefficient(self):
        return self.field.zero

    def materialize(self) -> Matrix:
        return Matrix.zeros(self.n, self.n, self.field)


@dataclass(frozen=True)
class TMReport:
    lhs: Matrix
    rhs: Matrix
    equal: bool
    inner_product: object
    derivative_value: object
    chain_pairing: object = None
    rank_one: RankOneRep | None = None


@dataclass(frozen=True)
class ProportionalityVerdict:
    holds: bool
    vector: tuple
    counterexample: tuple[int, int] | None = None


@dataclass(frozen=True)
class AdjEigenMap:
    mu: object
    partial_multiplicities: tuple[int, ...]
    verified: bool


@dataclass(frozen=True)
class IdentityCheck:
    lhs: object
    rhs: object
    equal: bool
    degenerate: bool = False
    split_lhs: object = None
    split_rhs: object = None

    @property
    def split_equal(self) -> bool | None:
        if self.split_lhs is None:
            return None
        return self.split_lhs == self.split_rhs


def _square(A: Matrix):
    if not A.is_square():
        raise NotSquare(f"{A.shape} is not square")


def _shifted(A: Matrix, lam) -> Matrix:
    return A.identity_like().scale(lam) - A


def _eigen_data(A: Matrix, lam):
    """(p_A, B, algebraic multiplicity, geometric multiplicity)."""
    _square(A)
    lam = A.field(lam)
    p = char_poly(A)
    if p(lam) != 0:
        raise NotAnEigenvalue(f"{A.field.format(lam)} is not an eigenvalue")
    B = _shifted(A, lam)
    return lam, p, B, p.root_multiplicity(lam), A.nrows - mat_rank(B)


def _kernel_pair(B: Matrix, u, v):
    """Right/left kernel vectors of B: given ones are checked, missing ones are canonical."""
    field = B.field
    if u is None:
        u = null_space_right(B)[0]
    else:
        u = tuple(field(e) for e in u)
        if is_zero_vector(u) or not is_zero_vector(B.apply(u)):
            raise NotEigenvector("u is not a right eigenvector")
    if v is None:
        v = null_space_left(B)[0]
    else:
        v = tuple(field(e) for e in v)
        if is_zero_vector(v) or not is_zero_vector(B.rapply(v)):
            raise NotEigenvector("v is not a left eigenvector")
    return tuple(u), tuple(v)


def _delta_power(g: int, m: int, field: Field):
    # (-delta_{1g})^(m-1) with 0^0 = 1
    if m == 1:
        return field.one
    if g == 1:
        return field.one if (m - 1) % 2 == 0 else -field.one
    return field.zero


# -- classical formula ----------------------------------------------------------

def tm_classical(A: Matrix, lam, v=None, w=None) -> TMReport:
    """Both sides of  (w^T v) Adj(lam I - A) = p_A'(lam) v w^T.

    When lam has geometric multiplicity 1 the report also carries the chain
    pairing of v and w through A - lam I (it equals w^T v for a simple lam).
    """
    lam, p, B, m, g = _eigen_data(A, lam)
    v, w = _kernel_pair(B, v, w)
    wv = dot(w, v)
    dp = p.derivative()(lam)
    lhs = mat_adjugate(B).scale(wv)
    rhs = outer(v, w, A.field).scale(dp)
    rank_one = RankOneRep(v, w, dp / wv, A.field) if wv != 0 else None
    chi = chain_pairing(-B, v, w, m - 1) if g == 1 else None
    return TMReport(lhs, rhs, lhs == rhs, wv, dp, chain_pairing=chi, rank_one=rank_one)


def lemma_proportionality(A: Matrix, side: str = "column", vector=None) -> ProportionalityVerdict:
    """Check w_i Adj(A)_j == w_j Adj(A)_i (columns) or the row version with v."""
    _square(A)
    n = A.nrows
    if mat_rank(A) == n:
        raise NotSingular("matrix is nonsingular")
    adj = mat_adjugate(A)
    if side == "column":
        vec = tuple(vector) if vector is not None else null_space_left(A)[0]
        slices = [adj.col(j) for j in range(n)]
    elif side == "row":
        vec = tuple(vector) if vector is not None else null_space_right(A)[0]
        slices = [adj.row(j) for j in range(n)]
    else:
        raise ValueError(f"side must be 'column' or 'row', not {side!r}")
    for i in range(n):
        for j in range(i + 1, n):
            if any(vec[i] * a != vec[j] * b for a, b in zip(slices[j], slices[i])):
                return ProportionalityVerdict(False, vec, (i, j))
    return ProportionalityVerdict(True, vec)


# -- adjugate of a nonsingular matrix -------------------------------------------------

def adj_elementary_divisors(A: Matrix, degree_cap: int = DEFAULT_DEGREE_CAP) -> list[ElementaryDivisor]:
    """Elementary divisors of Adj(A) from those of A, without forming Adj(A).

    Each divisor p of degree d with constant term a becomes
    Delta^d * rev(p)(x / Delta) / a, where rev is the reversal and
    Delta = det(A).
    """
    _square(A)
    delta = mat_det(A)
    if delta == 0:
        raise SingularMatrix("det(A) = 0")
    out = []
    for ed in elementary_divisors(A, degree_cap):
        p = ed.poly
        q = poly_scale_substitute(poly_reversal(p), delta) * (A.field.one / p.coeffs[0])
        pp = poly_is_prime_power(q, degree_cap)
        if pp is None:
            raise VerificationError(f"{q} is not a prime power")
        out.append(ElementaryDivisor(*pp))
    out.sort(key=ElementaryDivisor.sort_key)
    return out


def adj_eigen_map(A: Matrix, lam, degree_cap: int = DEFAULT_DEGREE_CAP) -> AdjEigenMap:
    """Eigenvalue det(A)/lam of Adj(A) and its partial multiplicities."""
    from .matrix import eigen_structure

    _square(A)
    delta = mat_det(A)
    if delta == 0:
        raise SingularMatrix("det(A) = 0")
    es = eigen_structure(A, lam)
    mu = scalar_arith("div", delta, es.eigenvalue)
    base = Poly([-mu, 1], A.field)
    adj_parts = sorted(
        (ed.exponent for ed in elementary_divisors(mat_adjugate(A), degree_cap) if ed.base == base),
        reverse=True,
    )
    return AdjEigenMap(mu, es.partial_multiplicities, tuple(adj_parts) == es.partial_multiplicities)


# -- singular case ----------------------------------------------------------------------

def chain_pairing(A: Matrix, u, v, k: int):
    """v^T x for a solution x of A^k x = u.

    Raises :class:`AmbiguousPairing` if v does not annihilate the kernel of
    A^k, since the value would then depend on the chosen solution.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    field = A.field
    u = tuple(field(e) for e in u)
    v = tuple(field(e) for e in v)
    if is_zero_vector(u) or is_zero_vector(v):
        raise ValueError("u and v must be nonzero")
    Ak = mat_power(A, k)
    x = solve(Ak, u)
    if x is None:
        raise Unsolvable(f"A^{k} x = u has no solution")
    for kv in null_space_right(Ak):
        if dot(v, kv) != 0:
            raise AmbiguousPairing("v^T x depends on the solution of A^k x = u")
    return dot(v, x)


def adj_rank_one(A: Matrix, u=None, v=None) -> RankOneRep | ZeroMatrix:
    """Adj(A) for singular A as ZeroMatrix or c * u v^T.

    With a single elementary divisor x^d at zero,
    c = (-1)^(n-1) [x^d]p_A / chain_pairing(A, u, v, d-1).
    """
    _square(A)
    n = A.nrows
    r = mat_rank(A)
    if r == n:
        raise NotSingular("matrix is nonsingular")
    if n - r >= 2:
        return ZeroMatrix(n, A.field)
    u, v = _kernel_pair(A, u, v)
    p = char_poly(A)
    d = p.root_multiplicity(A.field.zero)
    chi = chain_pairing(A, u, v, d - 1)
    sign = 1 if (n - 1) % 2 == 0 else -1
    return RankOneRep(u, v, p.coeff(d) * sign / chi, A.field)


def tm_general(A: Matrix, lam, u=None, v=None) -> RankOneRep | ZeroMatrix:
    """Adj(lam I - A) = (-delta_{1s})^(m-1) [p_A^(m)(lam)/m!] u v^T / chi."""
    lam, p, B, m, g = _eigen_data(A, lam)
    if g > 1:
        return ZeroMatrix(A.nrows, A.field)
    u, v = _kernel_pair(B, u, v)
    chi = chain_pairing(B, u, v, m - 1)
    coef = _delta_power(g, m, A.field) * p.taylor_coefficient(lam, m) / chi
    return RankOneRep(u, v, coef, A.field)


def split_spectrum_coefficient(A: Matrix, lam, degree_cap: int = DEFAULT_DEGREE_CAP):
    """(-delta_{1g})^(m-1) prod_{mu != lam} (lam - mu)^m_mu, or None if p_A does not split."""
    lam, p, _, m, g = _eigen_data(A, lam)
    roots = roots_in_field(p, degree_cap)
    if sum(e for _, e in roots) != p.degree:
        return None
    prod = A.field.one
    for mu, e in roots:
        if mu != lam:
            prod = prod * (lam - mu) ** e
    return _delta_power(g, m, A.field) * prod


def tm_general_split(A: Matrix, lam, u=None, v=None, degree_cap: int = DEFAULT_DEGREE_CAP):
    """Product form of :func:`tm_general`; None when the spectrum is not in the field."""
    coef = split_spectrum_coefficient(A, lam, degree_cap)
    if coef is None:
        return None
    lam, _, B, m, g = _eigen_data(A, lam)
    if g > 1:
        return ZeroMatrix(A.nrows, A.field)
    u, v = _kernel_pair(B, u, v)
    return RankOneRep(u, v, coef / chain_pairing(B, u, v, m - 1), A.field)


# -- eigenvector-eigenvalue identities ----------------------------------------------------

def _principal_char_value(A: Matrix, j: int, lam):
    """p_{M_jj}(lam): char poly of A with row and column j removed, at lam."""
    return char_poly(A.delete(j, j))(lam)


def eigen_identity(A: Matrix, lam, j: int, v=None, w=None) -> IdentityCheck:
    """(w^T v) p_{M_jj}(lam) == p_A'(lam) v_j w_j."""
    lam, p, B, m, _ = _eigen_data(A, lam)
    v, w = _kernel_pair(B, v, w)
    lhs = dot(w, v) * _principal_char_value(A, j, lam)
    rhs = p.derivative()(lam) * v[j] * w[j]
    return IdentityCheck(lhs, rhs, lhs == rhs, degenerate=m > 1)


def eigen_identity_general(A: Matrix, lam, j: int, u=None, v=None,
                           degree_cap: int = DEFAULT_DEGREE_CAP) -> IdentityCheck:
    """p_{M_jj}(lam) == (-1)^(m-1) [p_A^(m)(lam)/m!] u_j v_j / chi for geometric multiplicity 1.

    When p_A and p_{M_jj} both split, the product form over the distinct
    eigenvalues is filled in as well.
    """
    lam, p, B, m, g = _eigen_data(A, lam)
    if g > 1:
        raise GeometricMultiplicityTooHigh(f"geometric multiplicity {g} > 1")
    u, v = _kernel_pair(B, u, v)
    chi = chain_pairing(B, u, v, m - 1)
    scale = _delta_power(g, m, A.field) * u[j] * v[j] / chi
    lhs = _principal_char_value(A, j, lam)
    rhs = scale * p.taylor_coefficient(lam, m)

    split_lhs = split_rhs = None
    roots_a = roots_in_field(p, degree_cap)
    pm = char_poly(A.delete(j, j))
    roots_m = roots_in_field(pm, degree_cap) if pm.degree > 0 else []
    if sum(e for _, e in roots_a) == p.degree and sum(e for _, e in roots_m) == pm.degree:
        split_lhs = A.field.one
        for mu, q in roots_m:
            split_lhs = split_lhs * (lam - mu) ** q
        split_rhs = scale
        for mu, e in roots_a:
            if mu != lam:
                split_rhs = split_rhs * (lam - mu) ** e
    return IdentityCheck(lhs, rhs, lhs == rhs, split_lhs=split_lhs, split_rhs=split_rhs)


def eigen_identity_classical(A: Matrix, lam, j: int, v=None,
                             degree_cap: int = DEFAULT_DEGREE_CAP) -> IdentityCheck:
    """|v_j|^2 prod_{k != i}(lam_i - lam_k) == prod_k (lam_i - mu_jk) for symmetric A.

    ``|v_j|^2`` is read as v_j^2 / (v^T v), so any nonzero eigenvector works;
    a unit vector gives the textbook form.  The right side runs over the
    eigenvalues mu_jk of M_jj and equals p_{M_jj}(lam_i), which is how it
    is evaluated, so the mu_jk need not lie in F.  Needs a split, simple
    spectrum of A.
    """
    _square(A)
    if A != A.T:
        raise ValueError("classical identity needs a symmetric matrix")
    lam, p, B, m, _ = _eigen_data(A, lam)
    if m != 1:
        raise ValueError("classical identity needs a simple eigenvalue")
    roots = roots_in_field(p, degree_cap)
    if len(roots) != p.degree:
        raise ValueError("classical identity needs a split, simple spectrum")
    v, _ = _kernel_pair(B, v, None)
    vv = dot(v, v)
    if vv == 0:
        raise ValueError("eigenvector is isotropic")
    lhs = v[j] * v[j] / vv
    for mu, _ in roots:
        if mu != lam:
            lhs = lhs * (lam - mu)
    rhs = _principal_char_value(A, j, lam)
    return IdentityCheck(lhs, rhs, lhs == rhs)


# -- verifiers against the cofactor adjugate --------------------------------------------

def verify_adj_rank_one(A: Matrix, u=None, v=None) -> bool:
    return adj_rank_one(A, u, v).materialize() == mat_adjugate(A)


def verify_tm_general(A: Matrix, lam, u=None, v=None) -> bool:
    lam = A.field(lam)
    return tm_general(A, lam, u, v).materialize() == mat_adjugate(_shifted(A, lam))


def verify_adj_elementary_divisors(A: Matrix, degree_cap: int = DEFAULT_DEGREE_CAP) -> bool:
    return adj_elementary_divisors(A, degree_cap) == elementary_divisors(mat_adjugate(A), degree_cap)
