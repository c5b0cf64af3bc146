"""Randomized and exhaustive property suites.

Each suite builds its instances from a seeded RNG, compares a formula with
an independent computation, and returns a :class:`SuiteResult`.  The CLI
``selftest`` command and the acceptance tests both run these.

``count`` is the number of instances per field for the exact suites and the
number of families for the floating-point ones.
"""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from . import checks
from .canonical import companion, elementary_divisors
from .errors import AdjulabError, GeometricMultiplicityNotOne, HypothesisViolated
from .factor import roots_in_field
from .fields import GF, QQ, Field
from .matrix import (
    Matrix,
    block_diag,
    char_poly,
    dot,
    eigen_structure,
    mat_adjugate,
    mat_det,
    mat_inverse,
    mat_rank,
    null_space_left,
    null_space_right,
    outer,
)
from .perturbation import (
    MatrixFamily,
    adjugate_numeric,
    derivative_check,
    eigen_derivative,
    eigvec_via_adjugate,
    refine_root,
    roots_all,
    separation,
    spectral_scale,
)
from .poly import Poly
from .rankone import UpdateProblem, char_poly_update, p2_predicate, p2_predicate_table, p3_deflation
from .tm import (
    adj_eigen_map,
    adj_elementary_divisors,
    adj_rank_one,
    chain_pairing,
    eigen_identity,
    eigen_identity_classical,
    eigen_identity_general,
    lemma_proportionality,
    tm_classical,
    tm_general,
    tm_general_split,
)

EXACT_FIELDS = (GF(5), GF(7), QQ)
MAX_N = 6
GAP_MIN = 0.1  # "well separated": min eigenvalue gap relative to the spectral scale
FD_STEPS = (1e-3, 1e-4, 1e-5)


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    total: int = 0
    failures: list = dc_field(default_factory=list)
    seconds: float = 0.0
    stats: dict = dc_field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.passed == self.total and not self.failures

    def record(self, good: bool, detail: str = ""):
        self.total += 1
        if good:
            self.passed += 1
        elif len(self.failures) < 10:
            self.failures.append(detail or f"instance {self.total}")

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name}: {self.passed}/{self.total} ({self.seconds:.1f}s)"


def _rng(seed: int, label: str) -> random.Random:
    return random.Random(f"{seed}:{label}")


def touch(A: Matrix) -> Matrix:
    """Structural checks on every matrix a suite builds."""
    checks.check_matrix(A)
    return A


# -- random constructions ------------------------------------------------------------

def rand_scalar(field: Field, rng: random.Random, nonzero: bool = False):
    while True:
        if field is QQ:
            x = Fraction(rng.randint(-3, 3))
            if rng.random() < 0.15:
                x /= rng.choice((2, 3))
        else:
            x = field(rng.randrange(field.p))
        if not nonzero or x != 0:
            return x


def rand_matrix(r: int, c: int, field: Field, rng: random.Random) -> Matrix:
    return Matrix([[rand_scalar(field, rng) for _ in range(c)] for _ in range(r)], field)


def rand_vector(n: int, field: Field, rng: random.Random) -> tuple:
    return tuple(rand_scalar(field, rng) for _ in range(n))


def rand_invertible(n: int, field: Field, rng: random.Random) -> Matrix:
    """P L U with unit triangular L, U and small entries, so the inverse stays small over Q."""
    L = [[field.one if i == j else (field(rng.randint(-2, 2)) if j < i else field.zero)
          for j in range(n)] for i in range(n)]
    U = [[field.one if i == j else (field(rng.randint(-2, 2)) if j > i else field.zero)
          for j in range(n)] for i in range(n)]
    perm = list(range(n))
    rng.shuffle(perm)
    P = [[field.one if perm[i] == j else field.zero for j in range(n)] for i in range(n)]
    return Matrix(P, field) * Matrix(L, field) * Matrix(U, field)


def rand_nonsingular(n: int, field: Field, rng: random.Random) -> Matrix:
    while True:
        A = rand_matrix(n, n, field, rng)
        if mat_det(A) != 0:
            return A


def rand_monic(deg: int, field: Field, rng: random.Random, nonzero_constant: bool = False) -> Poly:
    while True:
        p = Poly([rand_scalar(field, rng) for _ in range(deg)] + [field.one], field)
        if not nonzero_constant or p.coeffs[0] != 0:
            return p


def conjugate(M: Matrix, rng: random.Random) -> tuple[Matrix, Matrix, Matrix]:
    """(S M S^-1, S, S^-1) for a random invertible S."""
    S = rand_invertible(M.nrows, M.field, rng)
    Si = mat_inverse(S)
    return S * M * Si, S, Si


def nilpotent_block(d: int, field: Field) -> Matrix:
    return companion(Poly.monomial(d, field))


# -- exact suites ---------------------------------------------------------------------

def _simple_eigenvalue_instances(seed: int, count: int, field: Field):
    """S D S^-1 with at least one simple eigenvalue; yields (A, [(lam, v, w, simple)])."""
    rng = _rng(seed, f"simple:{field!r}")
    for _ in range(count):
        n = rng.randint(1, MAX_N)
        lam = rand_scalar(field, rng)
        rest = []
        while len(rest) < n - 1:
            x = rand_scalar(field, rng)
            if x != lam:
                rest.append(x)
        D = Matrix.diag([lam] + rest, field)
        A, S, Si = conjugate(D, rng)
        touch(A)
        eig = []
        seen = set()
        for k, mu in enumerate([lam] + rest):
            if mu in seen:
                continue
            seen.add(mu)
            mult = ([lam] + rest).count(mu)
            eig.append((mu, S.col(k), Si.row(k), mult == 1))
        yield A, eig


def suite_tm_classical(seed: int, count: int) -> SuiteResult:
    res = SuiteResult("tm_classical")
    for field in EXACT_FIELDS:
        for A, eig in _simple_eigenvalue_instances(seed, count, field):
            good, detail = True, ""
            try:
                for mu, v, w, simple in eig:
                    rep = tm_classical(A, mu, v, w)
                    good &= rep.equal
                    if simple:
                        good &= rep.rank_one is not None and \
                            rep.rank_one.materialize() == mat_adjugate(A.identity_like().scale(mu) - A)
                    if not good:
                        detail = f"{field!r} {A!r} lam={mu}"
                        break
            except AdjulabError as exc:
                good, detail = False, f"{type(exc).__name__}: {exc}"
            res.record(good, detail)
    return res


def suite_eigen_identity(seed: int, count: int) -> SuiteResult:
    res = SuiteResult("eigen_identity")
    for field in EXACT_FIELDS:
        for A, eig in _simple_eigenvalue_instances(seed, count, field):
            good, detail = True, ""
            try:
                for mu, v, w, _ in eig:
                    for j in range(A.nrows):
                        if not eigen_identity(A, mu, j, v, w).equal:
                            good, detail = False, f"{field!r} {A!r} lam={mu} j={j}"
            except AdjulabError as exc:
                good, detail = False, f"{type(exc).__name__}: {exc}"
            res.record(good, detail)
    return res


def _nonsingular_instances(seed: int, count: int, field: Field):
    """Random nonsingular matrices: half dense, half conjugated block structures."""
    rng = _rng(seed, f"eldiv:{field!r}")
    for i in range(count):
        n = rng.randint(1, MAX_N)
        if i % 2 == 0:
            A = rand_nonsingular(n, field, rng)
        else:
            blocks, left = [], n
            while left:
                deg = rng.randint(1, min(2, left))
                e = rng.randint(1, max(1, min(3, left // deg)))
                base = rand_monic(deg, field, rng, nonzero_constant=True)
                blocks.append(companion(base**e))
                left -= deg * e
            A, _, _ = conjugate(block_diag(*blocks), rng)
        yield touch(A)


def suite_adj_elementary_divisors(seed: int, count: int) -> SuiteResult:
    res = SuiteResult("adj_elementary_divisors")
    for field in EXACT_FIELDS:
        for A in _nonsingular_instances(seed, count, field):
            try:
                adj = touch(mat_adjugate(A))
                good = adj_elementary_divisors(A) == elementary_divisors(adj)
                detail = f"{field!r} {A!r}"
            except AdjulabError as exc:
                good, detail = False, f"{type(exc).__name__}: {exc}"
            res.record(good, detail)
    return res


def suite_adj_eigen_map(seed: int, count: int) -> SuiteResult:
    """Eigenvalue map on the split-spectrum part of the elementary-divisor suite."""
    res = SuiteResult("adj_eigen_map")
    skipped = 0
    for field in EXACT_FIELDS:
        for A in _nonsingular_instances(seed, count, field):
            roots = roots_in_field(char_poly(A))
            if sum(e for _, e in roots) != A.nrows:
                skipped += 1
                continue
            good, detail = True, ""
            try:
                adj = mat_adjugate(A)
                delta = mat_det(A)
                for lam, _ in roots:
                    m = adj_eigen_map(A, lam)
                    es = eigen_structure(adj, m.mu)
                    if not (m.verified and m.mu == delta / lam
                            and es.partial_multiplicities == m.partial_multiplicities):
                        good, detail = False, f"{field!r} {A!r} lam={lam}"
            except AdjulabError as exc:
                good, detail = False, f"{type(exc).__name__}: {exc}"
            res.record(good, detail)
    res.stats["non_split_skipped"] = skipped
    return res


def _nilpotent_pair_instances(seed: int, count: int, field: Field):
    rng = _rng(seed, f"zero:{field!r}")
    for _ in range(count):
        d1 = rng.randint(1, MAX_N - 1)
        d2 = rng.randint(1, MAX_N - d1)
        r = rng.randint(0, MAX_N - d1 - d2)
        blocks = [nilpotent_block(d1, field), nilpotent_block(d2, field)]
        if r:
            blocks.append(rand_nonsingular(r, field, rng))
        A, _, _ = conjugate(block_diag(*blocks), rng)
        yield touch(A)


def suite_adj_zero(seed: int, count: int) -> SuiteResult:
    res = SuiteResult("adj_zero")
    for field in EXACT_FIELDS:
        for A in _nilpotent_pair_instances(seed, count, field):
            try:
                good = mat_adjugate(A).is_zero() and adj_rank_one(A).is_zero and mat_rank(A) <= A.nrows - 2
            except AdjulabError:
                good = False
            res.record(good, f"{field!r} {A!r}")
    return res


def _single_nilpotent_instances(seed: int, count: int, field: Field):
    """S (C_{x^d} + R) S^-1 with R invertible, d in [1, 4]."""
    rng = _rng(seed, f"rank1:{field!r}")
    for _ in range(count):
        d = rng.randint(1, 4)
        r = rng.randint(0, MAX_N - d)
        blocks = [nilpotent_block(d, field)]
        if r:
            blocks.append(rand_nonsingular(r, field, rng))
        A, _, _ = conjugate(block_diag(*blocks), rng)
        yield touch(A), rng


def _pairing_independent(A: Matrix, u, v, k: int) -> bool:
    """v^T x takes one value over x0 + span(ker A^k)."""
    from .matrix import mat_power, solve

    Ak = mat_power(A, k)
    x0 = solve(Ak, u)
    base = dot(v, x0)
    return all(dot(v, tuple(a + b for a, b in zip(x0, kv))) == base for kv in null_space_right(Ak))


def suite_adj_rank_one(seed: int, count: int) -> SuiteResult:
    res = SuiteResult("adj_rank_one")
    for field in EXACT_FIELDS:
        for A, rng in _single_nilpotent_instances(seed, count, field):
            try:
                adj = mat_adjugate(A)
                rep = adj_rank_one(A)
                good = not rep.is_zero and rep.materialize() == adj
                a, b = rand_scalar(field, rng, True), rand_scalar(field, rng, True)
                u = tuple(a * e for e in rep.u)
                v = tuple(b * e for e in rep.v)
                good &= adj_rank_one(A, u, v).materialize() == adj
                d = char_poly(A).root_multiplicity(field.zero)
                good &= _pairing_independent(A, u, v, d - 1)
                good &= chain_pairing(A, u, v, d - 1) == a * b * chain_pairing(A, rep.u, rep.v, d - 1)
                shifted = A.identity_like().scale(field.zero) - A
                good &= tm_general(A, 0).materialize() == mat_adjugate(shifted)
                split = tm_general_split(A, 0)
                good &= split is None or split.materialize() == mat_adjugate(shifted)
                detail = f"{field!r} {A!r}"
            except AdjulabError as exc:
                good, detail = False, f"{type(exc).__name__}: {exc}"
            res.record(good, detail)
    return res


def suite_eigen_identity_general(seed: int, count: int) -> SuiteResult:
    res = SuiteResult("eigen_identity_general")
    for field in EXACT_FIELDS:
        for A, _ in _single_nilpotent_instances(seed, count, field):
            good, detail = True, ""
            try:
                for j in range(A.nrows):
                    chk = eigen_identity_general(A, 0, j)
                    if not chk.equal or chk.split_equal is False:
                        good, detail = False, f"{field!r} {A!r} j={j}"
            except AdjulabError as exc:
                good, detail = False, f"{type(exc).__name__}: {exc}"
            res.record(good, detail)
    return res


def cayley_orthogonal(n: int, rng: random.Random) -> Matrix:
    """(I - K)(I + K)^-1 for a random skew-symmetric integer K: a rational orthogonal matrix."""
    K = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            k = Fraction(rng.randint(-2, 2))
            K[i][j], K[j][i] = k, -k
    K = Matrix(K, QQ)
    I = K.identity_like()
    return (I - K) * mat_inverse(I + K)


def suite_eigen_identity_classical(seed: int, count: int) -> SuiteResult:
    res = SuiteResult("eigen_identity_classical")
    rng = _rng(seed, "ev0")
    for _ in range(count):
        n = rng.randint(1, 5)
        Q = cayley_orthogonal(n, rng)
        spectrum = rng.sample(range(-9, 10), n)
        A = touch(Q * Matrix.diag(spectrum, QQ) * Q.T)
        good, detail = A == A.T, f"{A!r}"
        try:
            for i, lam in enumerate(spectrum):
                for j in range(n):
                    good &= eigen_identity_classical(A, lam, j, v=Q.col(i)).equal
                    good &= eigen_identity_classical(A, lam, j).equal
        except (AdjulabError, ValueError) as exc:
            good, detail = False, f"{type(exc).__name__}: {exc}"
        res.record(good, detail)
    return res


def suite_lemma_proportionality(seed: int, count: int) -> SuiteResult:
    res = SuiteResult("lemma_proportionality")
    for field in EXACT_FIELDS:
        rng = _rng(seed, f"lemma:{field!r}")
        for _ in range(count):
            n = rng.randint(2, MAX_N)
            while True:
                A = rand_matrix(n, n - 1, field, rng) * rand_matrix(n - 1, n, field, rng)
                if mat_rank(A) == n - 1:
                    break
            touch(A)
            try:
                good = lemma_proportionality(A, "column").holds and lemma_proportionality(A, "row").holds
            except AdjulabError:
                good = False
            res.record(good, f"{field!r} {A!r}")
    return res


def suite_char_poly_update(seed: int, count: int) -> SuiteResult:
    res = SuiteResult("char_poly_update")
    for field in EXACT_FIELDS:
        rng = _rng(seed, f"cpu:{field!r}")
        for k in range(count):
            n = rng.randint(1, MAX_N)
            A = touch(rand_matrix(n, n, field, rng))
            x = rand_vector(n, field, rng) if k % 10 else tuple(field.zero for _ in range(n))
            y = rand_vector(n, field, rng)
            prob = UpdateProblem(A, x, y)
            touch(prob.B)
            try:
                p = char_poly_update(prob)
                good = p == char_poly(prob.B) and (any(x) or p == char_poly(A))
            except AdjulabError:
                good = False
            res.record(good, f"{field!r} {A!r} x={x} y={y}")
    return res


def _orth_adjust(vec: tuple, target: tuple, rng: random.Random) -> tuple:
    """Modify ``vec`` so that dot(vec, target) = 0 (target nonzero)."""
    k = next(i for i, t in enumerate(target) if t != 0)
    s = dot(vec, target) - vec[k] * target[k]
    out = list(vec)
    out[k] = -s / target[k]
    return tuple(out)


def _geom_one_instance(field: Field, rng: random.Random):
    """A with eigenvalue lam of geometric multiplicity 1 (one Jordan-type block)."""
    lam = rand_scalar(field, rng)
    m = rng.randint(1, 3)
    r = rng.randint(0, MAX_N - m)
    block = companion(Poly([-lam, 1], field) ** m)
    blocks = [block]
    if r:
        while True:
            R = rand_matrix(r, r, field, rng)
            if char_poly(R)(lam) != 0:
                break
        blocks.append(R)
    A, _, _ = conjugate(block_diag(*blocks), rng)
    return A, lam


def suite_p2_random(seed: int, count: int) -> SuiteResult:
    res = SuiteResult("p2_random")
    for field in EXACT_FIELDS:
        rng = _rng(seed, f"p2:{field!r}")
        for k in range(count):
            A, lam = _geom_one_instance(field, rng)
            touch(A)
            n = A.nrows
            Bs = A.identity_like().scale(lam) - A
            u0, v0 = null_space_right(Bs)[0], null_space_left(Bs)[0]
            x, y = rand_vector(n, field, rng), rand_vector(n, field, rng)
            if k % 3 == 1:
                y = _orth_adjust(y, u0, rng)
            elif k % 3 == 2:
                x = _orth_adjust(x, v0, rng)
            prob = UpdateProblem(A, x, y, lam)
            B = touch(prob.B)
            direct = mat_det(B.identity_like().scale(lam) - B) == 0
            try:
                good = p2_predicate(prob).is_eigenvalue == direct
            except AdjulabError:
                good = False
            res.record(good, f"{field!r} {A!r} lam={lam} x={x} y={y}")
    return res


def suite_p2_multiple(seed: int, count: int) -> SuiteResult:
    """Geometric multiplicity >= 2: lam stays an eigenvalue of every rank-one update."""
    res = SuiteResult("p2_geometric_multiplicity_two")
    for field in EXACT_FIELDS:
        rng = _rng(seed, f"p2g:{field!r}")
        for _ in range(count):
            lam = rand_scalar(field, rng)
            m1 = rng.randint(1, 2)
            m2 = rng.randint(1, 2)
            blk = lambda m: companion(Poly([-lam, 1], field) ** m)  # noqa: E731
            A, _, _ = conjugate(block_diag(blk(m1), blk(m2)), rng)
            touch(A)
            prob = UpdateProblem(A, rand_vector(A.nrows, field, rng), rand_vector(A.nrows, field, rng), lam)
            good = char_poly(prob.B)(lam) == 0
            try:
                p2_predicate(prob)
                good = False
            except GeometricMultiplicityNotOne:
                pass
            res.record(good, f"{field!r} {A!r}")
    return res


def _int_det(M: np.ndarray) -> np.ndarray:
    """Laplace expansion over the last two axes of an integer array."""
    n = M.shape[-1]
    if n == 1:
        return M[..., 0, 0]
    out = np.zeros(M.shape[:-2], dtype=np.int64)
    for j in range(n):
        minor = np.delete(np.delete(M, 0, axis=-2), j, axis=-1)
        out += (-1) ** j * M[..., 0, j] * _int_det(minor)
    return out


def suite_p2_exhaustive(seed: int, count: int, max_n: int = 3) -> SuiteResult:
    """Every A, eigenvalue, x and y over GF(2) and GF(3) with n <= max_n.

    The reference is det(lam I - A - x y^T) mod p by Laplace expansion.  The
    enumeration is fixed; ``seed`` is unused and ``count == 0`` skips it.
    """
    res = SuiteResult("p2_exhaustive")
    if count <= 0:
        return res
    for p in (2, 3):
        field = GF(p)
        els = field.elements()
        for n in range(1, max_n + 1):
            vecs = [tuple(v) for v in itertools.product(els, repeat=n)]
            X = np.array([[int(e) for e in v] for v in vecs], dtype=np.int64)
            outer_xy = X[:, None, :, None] * X[None, :, None, :]
            for entries in itertools.product(range(p), repeat=n * n):
                A = touch(Matrix([entries[i * n:(i + 1) * n] for i in range(n)], field))
                pA = char_poly(A)
                Aint = np.array(entries, dtype=np.int64).reshape(n, n)
                for lam in range(p):
                    if pA(lam) != 0:
                        continue
                    dets = _int_det((lam * np.eye(n, dtype=np.int64) - Aint)[None, None] - outer_xy) % p
                    direct = dets == 0
                    try:
                        table = np.array(p2_predicate_table(A, lam, vecs, vecs))
                        good = bool(np.array_equal(table, direct))
                    except GeometricMultiplicityNotOne:
                        good = bool(direct.all())  # lam survives every update
                    res.record(good, f"GF({p}) {A!r} lam={lam}")
    return res


def _nonderogatory(n: int, field: Field, rng: random.Random, poly: Poly | None = None) -> Matrix:
    p = poly if poly is not None else rand_monic(n, field, rng)
    A, _, _ = conjugate(companion(p), rng)
    return A


def _split_xy(n1: int, n2: int, field: Field, rng: random.Random):
    return rand_vector(n1 + n2, field, rng), rand_vector(n1 + n2, field, rng)


def _coprime_blocks(A1, A2, x, y) -> tuple[bool, bool]:
    from .poly import poly_gcd

    n1 = A1.nrows
    B = block_diag(A1, A2) + outer(x, y, A1.field)
    n = B.nrows
    B11 = B.submatrix(range(n1), range(n1))
    B22 = B.submatrix(range(n1, n), range(n1, n))
    return (poly_gcd(char_poly(A1), char_poly(B11)).degree == 0,
            poly_gcd(char_poly(A2), char_poly(B22)).degree == 0)


def suite_p3_satisfying(seed: int, count: int) -> SuiteResult:
    res = SuiteResult("p3_satisfying")
    for field in EXACT_FIELDS:
        rng = _rng(seed, f"p3:{field!r}")
        made = 0
        while made < count:
            n1, n2 = rng.randint(1, 3), rng.randint(1, 3)
            if rng.random() < 0.5:
                c = rng.randint(1, min(n1, n2))
                common = rand_monic(c, field, rng)
                p1 = common * rand_monic(n1 - c, field, rng)
                p2 = common * rand_monic(n2 - c, field, rng)
            else:
                p1, p2 = rand_monic(n1, field, rng), rand_monic(n2, field, rng)
            A1 = _nonderogatory(n1, field, rng, p1)
            A2 = _nonderogatory(n2, field, rng, p2)
            x, y = _split_xy(n1, n2, field, rng)
            if not all(_coprime_blocks(A1, A2, x, y)):
                continue
            made += 1
            touch(A1)
            touch(A2)
            try:
                rep = p3_deflation(A1, A2, x, y)
                touch(rep.B)
                good = rep.verdict
            except AdjulabError:
                good = False
            res.record(good, f"{field!r} A1={A1!r} A2={A2!r} x={x} y={y}")
    return res


def suite_p3_violating(seed: int, count: int) -> SuiteResult:
    """Instances breaking one hypothesis; the right one must be reported."""
    res = SuiteResult("p3_violating")
    for field in EXACT_FIELDS:
        rng = _rng(seed, f"p3v:{field!r}")
        for k in range(count):
            kind = k % 4
            n1, n2 = rng.randint(2, 3), rng.randint(1, 3)
            A1 = _nonderogatory(n1, field, rng)
            A2 = _nonderogatory(n2, field, rng)
            x, y = _split_xy(n1, n2, field, rng)
            if kind == 0:
                c = rand_scalar(field, rng)
                diag = [c, c] + [rand_scalar(field, rng) for _ in range(n1 - 2)]
                A1, _, _ = conjugate(Matrix.diag(diag, field), rng)
                expected = "nonderogatory_A1"
            elif kind == 1:
                c = rand_scalar(field, rng)
                A2, _, _ = conjugate(Matrix.diag([c, c], field), rng)
                n2 = 2
                x, y = _split_xy(n1, n2, field, rng)
                expected = "nonderogatory_A2"
            elif kind == 2:
                x = tuple(field.zero for _ in range(n1)) + x[n1:]
                expected = "coprime_A1_B11"
            else:
                while True:
                    x, y = _split_xy(n1, n2, field, rng)
                    y = y[:n1] + tuple(field.zero for _ in range(n2))
                    if _coprime_blocks(A1, A2, x, y)[0]:
                        break
                expected = "coprime_A2_B22"
            touch(A1)
            touch(A2)
            try:
                p3_deflation(A1, A2, x, y)
                good, got = False, "no error"
            except HypothesisViolated as exc:
                good, got = exc.which == expected, exc.which
            res.record(good, f"{field!r} expected {expected}, got {got}")
    return res


# -- floating-point suites -------------------------------------------------------------

def _np_rng(seed: int, label: str) -> np.random.Generator:
    return np.random.default_rng(_rng(seed, label).getrandbits(64))


def random_family(rng: np.random.Generator, max_n: int = MAX_N, degrees=(1, 2), min_n: int = 2):
    """A random complex polynomial family and a point w with well-separated spectrum.

    n = 1 is excluded by default: z(w) is then the polynomial A(w) itself and
    a central difference of a degree <= 2 path has no truncation error to measure.
    """
    while True:
        n = int(rng.integers(min_n, max_n + 1))
        d = int(rng.integers(degrees[0], degrees[1] + 1))
        F = MatrixFamily([rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)) for _ in range(d + 1)])
        w = complex(rng.normal(), rng.normal()) * 0.5
        A = F(w)
        roots = roots_all(A)
        gap = min((separation(roots, k) for k in range(n)), default=np.inf)
        if gap >= GAP_MIN * spectral_scale(A, roots):
            return F, w, roots


def suite_derivative(seed: int, count: int) -> SuiteResult:
    """Formula vs central difference for every eigenvalue; order-2 decay of the error."""
    res = SuiteResult("eigen_derivative")
    rng = _np_rng(seed, "p1")
    worst, ratios = 0.0, []
    for _ in range(count):
        F, w, roots = random_family(rng)
        good, detail = True, ""
        try:
            for z in roots:
                errs = [derivative_check(F, w, z, h).abs_err for h in FD_STEPS]
                r = [errs[i] / errs[i + 1] if errs[i + 1] > 0 else np.inf for i in range(len(errs) - 1)]
                ratios.extend(r)
                worst = max(worst, errs[-1])
                if errs[-1] > 1e-6 or not all(50 <= q <= 200 for q in r):
                    good, detail = False, f"{F!r} w={w} z={z} errs={errs}"
        except AdjulabError as exc:
            good, detail = False, f"{type(exc).__name__}: {exc}"
        res.record(good, detail)
    res.stats.update(max_err_h_min=worst, min_ratio=min(ratios, default=None), max_ratio=max(ratios, default=None))
    return res


def suite_derivative_scaling(seed: int, count: int) -> SuiteResult:
    res = SuiteResult("eigen_derivative_scaling")
    rng = _np_rng(seed, "p1s")
    for _ in range(count):
        F, w, roots = random_family(rng)
        good = True
        for z in roots:
            z = refine_root(F(w), z)
            u, v = eigvec_via_adjugate(F(w), z)
            base = eigen_derivative(F, w, z, u, v)
            a = complex(*rng.normal(size=2))
            b = complex(*rng.normal(size=2))
            scaled = eigen_derivative(F, w, z, a * u, b * v)
            good &= abs(scaled - base) <= 1e-12 * max(1.0, abs(base))
        res.record(good, f"{F!r} w={w}")
    return res


def suite_eigvec_residual(seed: int, count: int) -> SuiteResult:
    res = SuiteResult("eigvec_via_adjugate")
    rng = _np_rng(seed, "evr")
    for _ in range(count):
        F, w, roots = random_family(rng, max_n=8, degrees=(0, 0), min_n=1)
        A = F(w)
        nrm = np.linalg.norm(A, 2)
        good = True
        for z in roots:
            z = refine_root(A, z)
            u, v = eigvec_via_adjugate(A, z)
            good &= np.linalg.norm(A @ u - z * u) <= 1e-8 * nrm
            good &= np.linalg.norm(v.conj() @ A - z * v.conj()) <= 1e-8 * nrm
        res.record(good, f"{A!r}")
    return res


def suite_numeric_adjugate(seed: int, count: int) -> SuiteResult:
    res = SuiteResult("numeric_adjugate")
    rng = _np_rng(seed, "nadj")
    for _ in range(count):
        n = int(rng.integers(1, 9))
        A = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        adj, det = adjugate_numeric(A)
        err = np.linalg.norm(A @ adj - det * np.eye(n), 2)
        res.record(err <= 1e-8 * np.linalg.norm(A, 2) * abs(det), f"n={n} err={err:.3e}")
    return res


SUITES = {
    "tm_classical": suite_tm_classical,
    "eigen_identity": suite_eigen_identity,
    "adj_elementary_divisors": suite_adj_elementary_divisors,
    "adj_eigen_map": suite_adj_eigen_map,
    "adj_zero": suite_adj_zero,
    "adj_rank_one": suite_adj_rank_one,
    "eigen_identity_general": suite_eigen_identity_general,
    "eigen_identity_classical": suite_eigen_identity_classical,
    "lemma_proportionality": suite_lemma_proportionality,
    "char_poly_update": suite_char_poly_update,
    "p2_random": suite_p2_random,
    "p2_geometric_multiplicity_two": suite_p2_multiple,
    "p2_exhaustive": suite_p2_exhaustive,
    "p3_satisfying": suite_p3_satisfying,
    "p3_violating": suite_p3_violating,
    "eigen_derivative": suite_derivative,
    "eigen_derivative_scaling": suite_derivative_scaling,
    "eigvec_via_adjugate": suite_eigvec_residual,
    "numeric_adjugate": suite_numeric_adjugate,
}


def run_suite(name: str, seed: int, count: int, **kwargs) -> SuiteResult:
    t = time.perf_counter()
    try:
        res = SUITES[name](seed, count, **kwargs)
    except Exception as exc:  # a crash is a failed suite, not a traceback
        res = SuiteResult(name)
        res.record(False, f"suite crashed: {type(exc).__name__}: {exc}")
    res.seconds = time.perf_counter() - t
    return res


def run_all(seed: int, count: int, names=None) -> list[SuiteResult]:
    return [run_suite(name, seed, count) for name in (names or SUITES)]
