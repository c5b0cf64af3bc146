"""Derivatives of simple eigenvalues of polynomial matrix families, in complex floats.

For A(w) = sum_k w^k A_k and a simple eigenvalue z(w) with right/left
eigenvectors u, v (v^* A = z v^*),

    z'(w) = v^* A'(w) u / (v^* u).

Eigenvectors come from the adjugate of z I - A(w), which has rank one at a
simple eigenvalue.  Finite differences are available as an independent check.
"""
from __future__ import annotations

from dataclasses import dataclass

import mpmath
import numpy as np
from scipy.linalg import hessenberg

from .errors import InnerProductUnderflow, NoConvergence, NotSimple, RootCrossing

DK_START = 0.4 + 0.9j
DK_MAX_ITER = 500
RESIDUAL_TOL = 1e-10
SEPARATION_TOL = 1e-6  # relative to the spectral scale
EIGEN_TOL = 1e-8  # sigma_min / sigma_max of z I - A for z to count as an eigenvalue
UNDERFLOW_TOL = 1e-12
FD_DPS = 40  # digits used to evaluate the perturbed eigenvalues in finite differences


class MatrixFamily:
    """A(w) = A_0 + w A_1 + ... + w^d A_d with complex square coefficients."""

    def __init__(self, coefficients):
        mats = [np.array(c, dtype=complex) for c in coefficients]
        if not mats:
            raise ValueError("a family needs at least one coefficient")
        n = mats[0].shape[0]
        for m in mats:
            if m.ndim != 2 or m.shape != (n, n):
                raise ValueError("family coefficients must be square and of equal size")
        self.coefficients = mats

    @property
    def n(self) -> int:
        return self.coefficients[0].shape[0]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, w) -> np.ndarray:
        out = np.zeros((self.n, self.n), dtype=complex)
        for c in reversed(self.coefficients):
            out = out * w + c
        return out

    def derivative(self) -> "MatrixFamily":
        if self.degree == 0:
            return MatrixFamily([np.zeros((self.n, self.n), dtype=complex)])
        return MatrixFamily([k * c for k, c in enumerate(self.coefficients) if k > 0])

    def __repr__(self):
        return f"MatrixFamily(n={self.n}, degree={self.degree})"


def family_eval(F: MatrixFamily, w) -> np.ndarray:
    return F(w)


def family_derivative(F: MatrixFamily) -> MatrixFamily:
    return F.derivative()


@dataclass(frozen=True)
class TrackedEigenvalue:
    omega: complex
    z: complex
    u: np.ndarray
    v: np.ndarray
    separation: float


@dataclass(frozen=True)
class DerivativeCheck:
    formula: complex
    finite_diff: complex
    abs_err: float


# -- characteristic polynomial and roots ---------------------------------------------

def char_poly_numeric(A) -> np.ndarray:
    """Monic characteristic polynomial, coefficients low to high.

    Hessenberg reduction followed by the La Budde recurrence on the
    leading principal submatrices.
    """
    A = np.asarray(A, dtype=complex)
    n = A.shape[0]
    if n == 0:
        return np.ones(1, dtype=complex)
    H = hessenberg(A)
    polys = [np.ones(1, dtype=complex)]
    for k in range(n):
        # p_{k+1} = (x - h_kk) p_k - sum_i h_{k-i,k} prod(subdiag) p_{k-i}
        p = np.zeros(k + 2, dtype=complex)
        p[1:] += polys[k]
        p[:-1] -= H[k, k] * polys[k]
        prod = 1.0 + 0j
        for i in range(1, k + 1):
            prod *= H[k - i + 1, k - i]
            term = H[k - i, k] * prod * polys[k - i]
            p[: len(term)] -= term
        polys.append(p)
    return polys[n]


def _horner(c: np.ndarray, z):
    out = 0j
    for a in c[::-1]:
        out = out * z + a
    return out


def durand_kerner(c: np.ndarray, max_iter: int = DK_MAX_ITER) -> np.ndarray:
    """All roots of the monic polynomial with coefficients ``c`` (low to high)."""
    n = len(c) - 1
    if n == 0:
        return np.zeros(0, dtype=complex)
    z = DK_START ** np.arange(n, dtype=complex)
    for _ in range(max_iter):
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        step = np.array([_horner(c, zk) for zk in z]) / diff.prod(axis=1)
        z = z - step
        if np.all(np.abs(step) <= 1e-15 * (1.0 + np.abs(z))):
            break
    norm = np.abs(c).sum()
    for zk in z:
        scale = max(norm, float(np.polyval(np.abs(c[::-1]), abs(zk))))
        if not np.isfinite(zk) or abs(_horner(c, zk)) > RESIDUAL_TOL * scale:
            raise NoConvergence(f"Durand-Kerner did not converge within {max_iter} iterations")
    return z


def roots_all(A) -> np.ndarray:
    """All eigenvalues of a complex matrix as roots of its characteristic polynomial."""
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("matrix must be square")
    if A.shape[0] > 64:
        raise ValueError("roots_all is meant for n <= 64")
    return durand_kerner(char_poly_numeric(A))


def refine_root(A, z, steps: int = 3) -> complex:
    """Newton on det(z I - A): z <- z - 1 / tr((z I - A)^-1)."""
    A = np.asarray(A, dtype=complex)
    eye = np.eye(A.shape[0])
    for _ in range(steps):
        try:
            t = np.trace(np.linalg.solve(z * eye - A, eye))
        except np.linalg.LinAlgError:
            break
        if not np.isfinite(t) or t == 0:
            break
        dz = 1.0 / t
        z = z - dz
        if abs(dz) <= 1e-16 * max(1.0, abs(z)):
            break
    return complex(z)


def refine_root_mp(F: "MatrixFamily", w, z, dps: int = FD_DPS, steps: int = 2) -> mpmath.mpc:
    """Polish a simple eigenvalue of A(w) to ``dps`` digits.

    Two-sided Rayleigh quotient z + v^*(A u - z u) / v^* u with u, v singular
    vectors from double precision and the residual formed with A(w) in
    extended precision.  The error is quadratic in the eigenvector errors.
    Used for finite differences, where rounding in z(w +- h) is amplified by 1/h.
    """
    with mpmath.workdps(dps):
        w = mpmath.mpc(w)
        n = F.n
        coeffs = [[[mpmath.mpc(complex(e)) for e in row] for row in c] for c in F.coefficients]
        A = [[mpmath.mpc(0)] * n for _ in range(n)]
        for c in reversed(coeffs):
            A = [[A[i][j] * w + c[i][j] for j in range(n)] for i in range(n)]
        z = mpmath.mpc(z)
        for _ in range(steps):
            M = complex(z) * np.eye(n) - F(complex(w))
            Us, _, Vh = np.linalg.svd(M)
            u = [mpmath.mpc(complex(e)) for e in Vh[-1].conj()]
            v = [mpmath.mpc(complex(e)).conjugate() for e in Us[:, -1]]  # conjugated for v^*
            vu = mpmath.fsum(a * b for a, b in zip(v, u))
            if vu == 0:
                break
            r = mpmath.fsum(v[i] * (mpmath.fsum(A[i][j] * u[j] for j in range(n)) - z * u[i]) for i in range(n))
            z += r / vu
        return z


def spectral_scale(A, roots) -> float:
    # floored at 1 so that a tiny or zero matrix cannot make clustered roots look separated
    m = float(np.max(np.abs(roots))) if len(roots) else 0.0
    return max(1.0, m, float(np.linalg.norm(A, 2)))


def separation(roots, k: int) -> float:
    others = np.delete(np.asarray(roots), k)
    return float(np.min(np.abs(others - roots[k]))) if len(others) else np.inf


# -- adjugate ---------------------------------------------------------------------

def adjugate_numeric(M) -> tuple[np.ndarray, complex]:
    """(Adj(M), det(M)) through the SVD, which stays accurate when M is nearly singular.

    With M = U S V^*, Adj(M) = det(U) conj(det(V)) V Adj(S) U^*, where
    Adj(S) = diag(prod_{j != i} s_j).
    """
    M = np.asarray(M, dtype=complex)
    n = M.shape[0]
    if n == 0:
        return np.zeros((0, 0), dtype=complex), 1.0 + 0j
    if n == 1:
        return np.ones((1, 1), dtype=complex), complex(M[0, 0])
    U, s, Vh = np.linalg.svd(M)
    phase = np.linalg.det(U) * np.linalg.det(Vh)
    cof = np.array([np.prod(np.delete(s, i)) for i in range(n)])
    adj = phase * (Vh.conj().T * cof) @ U.conj().T
    return adj, complex(phase * np.prod(s))


def eigvec_via_adjugate(A, z) -> tuple[np.ndarray, np.ndarray]:
    """Right u and left v (v^* A = z v^*) unit eigenvectors from Adj(z I - A)."""
    A = np.asarray(A, dtype=complex)
    n = A.shape[0]
    M = z * np.eye(n) - A
    if n == 1:
        if abs(M[0, 0]) > EIGEN_TOL * max(1.0, abs(A[0, 0])):
            raise NotSimple("z is not an eigenvalue")
        return np.ones(1, dtype=complex), np.ones(1, dtype=complex)
    s = np.linalg.svd(M, compute_uv=False)
    top = max(s[0], np.linalg.norm(A, 2), 1e-300)
    if s[-1] > EIGEN_TOL * top:
        raise NotSimple("z is not an eigenvalue (adjugate is nonsingular)")
    if s[-2] <= EIGEN_TOL * top:
        raise NotSimple("z I - A has a kernel of dimension > 1")
    adj, _ = adjugate_numeric(M)
    col_norms = np.linalg.norm(adj, axis=0)
    row_norms = np.linalg.norm(adj, axis=1)
    j, i = int(np.argmax(col_norms)), int(np.argmax(row_norms))
    if col_norms[j] == 0:
        raise NotSimple("adjugate vanishes")
    u = adj[:, j] / col_norms[j]
    v = adj[i, :].conj() / row_norms[i]
    return u, v


def eigen_derivative(F: MatrixFamily, w, z, u=None, v=None) -> complex:
    """z'(w) = v^* A'(w) u / v^* u; u and v default to adjugate eigenvectors."""
    A = F(w)
    if u is None or v is None:
        u0, v0 = eigvec_via_adjugate(A, z)
        u = u0 if u is None else u
        v = v0 if v is None else v
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    vu = np.vdot(v, u)
    if abs(vu) < UNDERFLOW_TOL * np.linalg.norm(u) * np.linalg.norm(v):
        raise InnerProductUnderflow(f"|v^* u| = {abs(vu):.3e} is too small")
    return complex(np.vdot(v, F.derivative()(w) @ u) / vu)


# -- tracking and finite differences ---------------------------------------------------

def track(F: MatrixFamily, w, z) -> TrackedEigenvalue:
    """Locate the eigenvalue of F(w) nearest z and check that it is simple."""
    A = F(w)
    roots = roots_all(A)
    k = int(np.argmin(np.abs(roots - z)))
    sep = separation(roots, k)
    if sep <= SEPARATION_TOL * spectral_scale(A, roots):
        raise RootCrossing(f"eigenvalue near {z} is not separated (gap {sep:.3e})")
    zk = refine_root(A, roots[k])
    u, v = eigvec_via_adjugate(A, zk)
    return TrackedEigenvalue(complex(w), zk, u, v, sep)


def _continue(F: MatrixFamily, w, z, sep: float, dps):
    A = F(complex(w))
    roots = roots_all(A)
    d = np.abs(roots - z)
    order = np.argsort(d)
    if len(roots) > 1 and d[order[1]] <= 2 * d[order[0]]:
        raise RootCrossing("nearest-root match is ambiguous")
    if d[order[0]] >= 0.5 * sep:
        raise RootCrossing("eigenvalue moved too far within the step")
    if dps is None:
        return refine_root(A, roots[order[0]])
    return refine_root_mp(F, w, refine_root(A, roots[order[0]]), dps)


def derivative_check(F: MatrixFamily, w, z, h: float, dps: int | None = FD_DPS) -> DerivativeCheck:
    """Compare the formula with the central difference (z(w+h) - z(w-h)) / 2h.

    The perturbed eigenvalues are located in double precision by nearest-root
    continuation and then polished to ``dps`` digits; ``dps=None`` keeps
    everything in double precision.
    """
    t = track(F, w, z)
    formula = eigen_derivative(F, w, t.z, t.u, t.v)
    if dps is None:
        zp = _continue(F, w + h, t.z, t.separation, None)
        zm = _continue(F, w - h, t.z, t.separation, None)
        fd = complex((zp - zm) / (2 * h))
    else:
        with mpmath.workdps(dps):
            zp = _continue(F, mpmath.mpc(w) + h, t.z, t.separation, dps)
            zm = _continue(F, mpmath.mpc(w) - h, t.z, t.separation, dps)
            fd = complex((zp - zm) / (2 * mpmath.mpf(h)))
    return DerivativeCheck(formula, fd, float(abs(formula - fd)))


def sweep(F: MatrixFamily, start, stop, steps: int, z0, h: float) -> list[dict]:
    """Track one eigenvalue along a straight path in w, checking the derivative at each point."""
    pts = np.linspace(complex(start), complex(stop), int(steps))
    out = []
    z = z0
    for w in pts:
        z = track(F, w, z).z
        chk = derivative_check(F, w, z, h)
        out.append({"omega": complex(w), "z": z, "formula": chk.formula,
                    "finite_diff": chk.finite_diff, "abs_err": chk.abs_err})
    return out
