"""Eigenvalues of rank-one updates B = A + x y^T."""
from __future__ import annotations

from dataclasses import dataclass

from .canonical import invariant_factors
from .errors import GeometricMultiplicityNotOne, HypothesisViolated, NotSquare, VerificationError
from .factor import squarefree_part
from .matrix import (
    Matrix,
    block_diag,
    char_poly,
    dot,
    lambda_minus,
    mat_adjugate,
    outer,
)
from .poly import Poly, poly_arith, poly_gcd
from .tm import _eigen_data, _kernel_pair


@dataclass(frozen=True)
class UpdateProblem:
    A: Matrix
    x: tuple
    y: tuple
    lam: object = None

    def __post_init__(self):
        A = self.A
        if not A.is_square():
            raise NotSquare(f"{A.shape} is not square")
        if len(self.x) != A.nrows or len(self.y) != A.nrows:
            raise ValueError("x and y must have length n")
        object.__setattr__(self, "x", tuple(A.field(e) for e in self.x))
        object.__setattr__(self, "y", tuple(A.field(e) for e in self.y))
        if self.lam is not None:
            object.__setattr__(self, "lam", A.field(self.lam))

    @property
    def B(self) -> Matrix:
        return self.A + outer(self.x, self.y, self.A.field)


@dataclass(frozen=True)
class P2Result:
    is_eigenvalue: bool
    witness_yu: object
    witness_vx: object


@dataclass(frozen=True)
class DeflationReport:
    g0: Poly  # sf(gcd(p_A1, p_A2))
    g1: Poly  # sf(gcd(p_B, p_A1))
    g2: Poly  # sf(gcd(p_B, p_A2))
    verdict: bool
    B: Matrix


def char_poly_update(prob: UpdateProblem) -> Poly:
    """p_B, computed directly and as p_A - y^T Adj(xI - A) x; the two must agree."""
    A = prob.A
    direct = char_poly(prob.B)
    adj = mat_adjugate(lambda_minus(A))
    correction = Poly.zero(A.field)
    for i, yi in enumerate(prob.y):
        if yi:
            for j, xj in enumerate(prob.x):
                if xj and adj[i, j]:
                    correction = correction + adj[i, j] * (yi * xj)
    via = poly_arith("sub", char_poly(A), correction)
    if via != direct:
        raise VerificationError(f"rank-one char poly mismatch: {direct} vs {via}")
    return direct


def p2_predicate(prob: UpdateProblem) -> P2Result:
    """lam stays an eigenvalue of B iff y^T u0 = 0 or v0^T x = 0 (geometric multiplicity 1)."""
    if prob.lam is None:
        raise ValueError("p2_predicate needs an eigenvalue")
    lam, _, Bshift, _, g = _eigen_data(prob.A, prob.lam)
    if g != 1:
        raise GeometricMultiplicityNotOne(f"geometric multiplicity {g}")
    u0, v0 = _kernel_pair(Bshift, None, None)
    yu = dot(prob.y, u0)
    vx = dot(v0, prob.x)
    pred = yu == 0 or vx == 0
    if pred != (char_poly(prob.B)(lam) == 0):
        raise VerificationError("predicate disagrees with p_B(lam)")
    return P2Result(pred, yu, vx)


def p2_predicate_table(A: Matrix, lam, xs, ys) -> list[list[bool]]:
    """Eigenvalue-survival predicate for every pair (xs[a], ys[b]), sharing one eigenvector computation.

    Unlike :func:`p2_predicate` there is no internal cross-check against p_B.
    """
    lam, _, Bshift, _, g = _eigen_data(A, lam)
    if g != 1:
        raise GeometricMultiplicityNotOne(f"geometric multiplicity {g}")
    u0, v0 = _kernel_pair(Bshift, None, None)
    yu = [dot(y, u0) == 0 for y in ys]
    return [[vx or b for b in yu] for vx in (dot(v0, x) == 0 for x in xs)]


def p3_deflation(A1: Matrix, A2: Matrix, x, y) -> DeflationReport:
    """Compare the spectra of A1, A2 and B = (A1 + A2) + x y^T through squarefree gcds.

    Hypotheses: A1 and A2 are nonderogatory and p_A1, p_A2 are coprime to
    the characteristic polynomials of the matching diagonal blocks of B.
    """
    for name, M in (("A1", A1), ("A2", A2)):
        if not M.is_square():
            raise NotSquare(f"{name} is not square")
        if len(invariant_factors(M)) > 1:
            raise HypothesisViolated(f"nonderogatory_{name}", f"{name} has an eigenvalue of geometric multiplicity > 1")
    n1, n2 = A1.nrows, A2.nrows
    prob = UpdateProblem(block_diag(A1, A2), tuple(x), tuple(y))
    B = prob.B
    B11 = B.submatrix(range(n1), range(n1))
    B22 = B.submatrix(range(n1, n1 + n2), range(n1, n1 + n2))
    p1, p2, pB = char_poly(A1), char_poly(A2), char_poly(B)
    if poly_gcd(p1, char_poly(B11)).degree > 0:
        raise HypothesisViolated("coprime_A1_B11", "p_A1 and p_B11 share a root")
    if poly_gcd(p2, char_poly(B22)).degree > 0:
        raise HypothesisViolated("coprime_A2_B22", "p_A2 and p_B22 share a root")
    g0 = squarefree_part(poly_gcd(p1, p2))
    g1 = squarefree_part(poly_gcd(pB, p1))
    g2 = squarefree_part(poly_gcd(pB, p2))
    return DeflationReport(g0, g1, g2, g0 == g1 == g2, B)
