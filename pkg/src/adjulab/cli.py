"""Command-line front end.

Every subcommand reads the documented JSON formats, prints one JSON document
(or CSV for ``perturb --sweep``) on stdout and diagnostics on stderr.

Exit codes: 0 success, 1 verification failed, 2 input or usage error,
3 unsupported (degree cap exceeded, no convergence).
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import suites
from .canonical import companion, elementary_divisors, invariant_factors, rcf, smith_normal_form
from .errors import (
    AdjulabError,
    DegreeCapExceeded,
    GeometricMultiplicityTooHigh,
    HypothesisViolated,
    NoConvergence,
    VerificationError,
)
from .factor import poly_factor, roots_in_field
from .fields import scalar_parse
from .matrix import (
    Matrix,
    char_poly,
    eigen_structure,
    lambda_minus,
    mat_adjugate,
    mat_det,
    mat_poly_eval,
    mat_rank,
    null_space_left,
    null_space_right,
)
from .perturbation import (
    derivative_check,
    eigen_derivative,
    family_derivative,
    family_eval,
    roots_all,
    sweep,
    track,
)
from .poly import Poly, poly_to_json
from .rankone import UpdateProblem, char_poly_update, p2_predicate, p3_deflation
from .serialize import (
    complex_to_json,
    dumps,
    eldiv_to_json,
    family_from_json,
    matrix_from_json,
    matrix_to_json,
    parse_complex,
    rank_one_to_json,
    smith_to_json,
    sweep_to_csv,
    tm_report_to_json,
    vector_from_json,
    vector_to_json,
)
from .tm import (
    adj_eigen_map,
    adj_rank_one,
    adj_elementary_divisors,
    eigen_identity,
    eigen_identity_classical,
    eigen_identity_general,
    lemma_proportionality,
    tm_classical,
    tm_general,
    verify_tm_general,
)

# Library operations reached by each subcommand.  Every operation appears
# under exactly one subcommand; tests trace the calls to confirm reachability.
OPERATIONS = {
    "adjugate": ("mat_det", "mat_adjugate", "mat_rank", "null_space_right", "null_space_left",
                 "char_poly", "mat_poly_eval"),
    "smith": ("smith_normal_form", "invariant_factors", "companion", "rcf"),
    "eldiv": ("elementary_divisors", "eigen_structure", "poly_factor", "poly_squarefree",
              "poly_derivative", "poly_gcd"),
    "adj-eldiv": ("adj_elementary_divisors", "adj_eigen_map", "poly_reversal",
                  "poly_scale_substitute", "poly_is_prime_power", "scalar_arith"),
    "tm": ("scalar_parse", "tm_classical", "lemma_proportionality", "chain_pairing", "mat_power",
           "adj_rank_one", "tm_general", "eigen_identity", "eigen_identity_general",
           "eigen_identity_classical"),
    "rank1": ("char_poly_update", "p2_predicate", "poly_arith"),
    "deflate": ("p3_deflation",),
    "perturb": ("family_eval", "family_derivative", "roots_all", "eigvec_via_adjugate",
                "eigen_derivative", "derivative_check"),
    "selftest": ("selftest",),
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- input -----------------------------------------------------------------------------

def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError as exc:
        raise UsageError(f"no such file: {path}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc})") from exc


def _load_matrix(path: str, square: bool = True) -> Matrix:
    M = matrix_from_json(_load_json(path))
    if square and not M.is_square():
        raise UsageError(f"{path}: matrix is {M.nrows}x{M.ncols}, expected square")
    return M


def _load_vector(path: str, field, n: int) -> tuple:
    v = vector_from_json(_load_json(path), field)
    if len(v) != n:
        raise UsageError(f"{path}: vector has length {len(v)}, expected {n}")
    return v


def _scalar_matrix(M: Matrix, what: str) -> Matrix:
    if M.is_poly:
        raise UsageError(f"{what} needs a scalar matrix")
    return M


def _field_eigenvalues(A: Matrix) -> list:
    return sorted((lam for lam, _ in roots_in_field(char_poly(A))), key=A.field.format)


# -- subcommands -------------------------------------------------------------------------
# Each returns (payload, ok); ok False means a verification failed.

def cmd_adjugate(args):
    A = _load_matrix(args.inp)
    adj = mat_adjugate(A)
    det = mat_det(A)
    out = {"adjugate": matrix_to_json(adj)}
    if A.is_poly:
        out["det"] = poly_to_json(det)
        return out, True
    f = A.field
    p = char_poly(A)
    cayley_hamilton = mat_poly_eval(p, A).is_zero()
    out.update(
        det=f.format(det),
        rank=mat_rank(A),
        char_poly=poly_to_json(p),
        null_space_right=[vector_to_json(v, f) for v in null_space_right(A)],
        null_space_left=[vector_to_json(v, f) for v in null_space_left(A)],
        cayley_hamilton=cayley_hamilton,
    )
    return out, cayley_hamilton


def cmd_smith(args):
    M = _load_matrix(args.inp, square=False)
    A = None
    if not M.is_poly:
        if not M.is_square():
            raise UsageError("a scalar input matrix must be square")
        A, M = M, lambda_minus(M)
    S = smith_normal_form(M, with_transforms=args.transforms)
    out = {"smith": smith_to_json(S)}
    ok = True
    if args.transforms:
        ok = S.U * M * S.V == S.as_matrix(M.shape)
        out["transforms_verified"] = ok
    if A is not None:
        inv = invariant_factors(A)
        out["invariant_factors"] = [poly_to_json(q) for q in inv]
        out["companion_blocks"] = [matrix_to_json(companion(q)) for q in inv if q.degree > 0]
        out["rcf"] = matrix_to_json(rcf(A))
        out["rcf_primary"] = matrix_to_json(rcf(A, blocks="elementary"))
    return out, ok


def cmd_eldiv(args):
    A = _scalar_matrix(_load_matrix(args.inp), "eldiv")
    f = A.field
    p = char_poly(A)
    fac = poly_factor(p)
    divisors = elementary_divisors(A)
    structure = []
    for lam in _field_eigenvalues(A):
        es = eigen_structure(A, lam)
        structure.append({
            "eigenvalue": f.format(lam),
            "algebraic_multiplicity": es.algebraic_multiplicity,
            "geometric_multiplicity": es.geometric_multiplicity,
            "partial_multiplicities": list(es.partial_multiplicities),
        })
    # the divisors multiply out to p_A
    prod = Poly.one(f)
    for d in divisors:
        prod = prod * d.poly
    out = {
        "elementary_divisors": eldiv_to_json(divisors),
        "char_poly": poly_to_json(p),
        "char_poly_factors": [{"base": poly_to_json(b), "exponent": e} for b, e in fac.factors],
        "eigenstructure": structure,
        "product_check": prod == p,
    }
    return out, prod == p


def cmd_adj_eldiv(args):
    A = _scalar_matrix(_load_matrix(args.inp), "adj-eldiv")
    f = A.field
    predicted = adj_elementary_divisors(A)
    oracle = elementary_divisors(mat_adjugate(A))
    maps = []
    ok = predicted == oracle
    for lam in _field_eigenvalues(A):
        em = adj_eigen_map(A, lam)
        ok &= em.verified
        maps.append({"eigenvalue": f.format(lam), "mu": f.format(em.mu),
                     "partial_multiplicities": list(em.partial_multiplicities), "verified": em.verified})
    out = {
        "adj_elementary_divisors": eldiv_to_json(predicted),
        "oracle_elementary_divisors": eldiv_to_json(oracle),
        "equal": predicted == oracle,
        "eigen_map": maps,
    }
    return out, ok


def _identity_json(chk, f) -> dict:
    out = {"lhs": f.format(chk.lhs), "rhs": f.format(chk.rhs), "equal": chk.equal}
    if chk.split_lhs is not None:
        out.update(split_lhs=f.format(chk.split_lhs), split_rhs=f.format(chk.split_rhs),
                   split_equal=chk.split_equal)
    return out


def cmd_tm(args):
    A = _scalar_matrix(_load_matrix(args.inp), "tm")
    f, n = A.field, A.nrows
    lam = scalar_parse(args.lam, f)
    u = _load_vector(args.u, f, n) if args.u else None
    v = _load_vector(args.v, f, n) if args.v else None

    rep = tm_classical(A, lam, u, v)
    ok = rep.equal
    out = {"lambda": f.format(lam), "tm_classical": tm_report_to_json(rep, f)}

    gen = tm_general(A, lam, u, v)
    gen_ok = verify_tm_general(A, lam, u, v)
    ok &= gen_ok
    out["tm_general"] = rank_one_to_json(gen)
    out["tm_general_verified"] = gen_ok

    B = A.identity_like().scale(lam) - A
    # the same adjugate through the singular-matrix formula applied to B
    direct = adj_rank_one(B, u, v)
    ok &= direct.materialize() == gen.materialize()
    out["adj_rank_one"] = rank_one_to_json(direct)

    prop = {}
    for side in ("column", "row"):
        verdict = lemma_proportionality(B, side)
        ok &= verdict.holds
        prop[side] = {"holds": verdict.holds, "vector": vector_to_json(verdict.vector, f)}
    out["proportionality"] = prop

    ids = [eigen_identity(A, lam, j, u, v) for j in range(n)]
    ok &= all(c.equal for c in ids)
    out["eigen_identity"] = [_identity_json(c, f) for c in ids]
    try:
        gids = [eigen_identity_general(A, lam, j, u, v) for j in range(n)]
    except GeometricMultiplicityTooHigh:
        out["eigen_identity_general"] = None
    else:
        ok &= all(c.equal and c.split_equal is not False for c in gids)
        out["eigen_identity_general"] = [_identity_json(c, f) for c in gids]
    if u is None and A == A.T:
        try:
            cids = [eigen_identity_classical(A, lam, j) for j in range(n)]
        except ValueError:
            # needs a simple eigenvalue and a split simple spectrum
            cids = None
        if cids is not None:
            ok &= all(c.equal for c in cids)
            out["eigen_identity_classical"] = [_identity_json(c, f) for c in cids]
    return out, ok


def cmd_rank1(args):
    A = _scalar_matrix(_load_matrix(args.inp), "rank1")
    f, n = A.field, A.nrows
    x = _load_vector(args.x, f, n)
    y = _load_vector(args.y, f, n)
    lam = scalar_parse(args.lam, f) if args.lam is not None else None
    prob = UpdateProblem(A, x, y, lam)
    pB = char_poly_update(prob)
    out = {"B": matrix_to_json(prob.B), "p_A": poly_to_json(char_poly(A)), "p_B": poly_to_json(pB)}
    if lam is not None:
        r = p2_predicate(prob)
        out["p2"] = {"lambda": f.format(prob.lam), "is_eigenvalue": r.is_eigenvalue,
                     "witness_yu": f.format(r.witness_yu), "witness_vx": f.format(r.witness_vx)}
    return out, True


def cmd_deflate(args):
    A1 = _scalar_matrix(_load_matrix(args.a1), "deflate")
    A2 = _scalar_matrix(_load_matrix(args.a2), "deflate")
    if A1.field != A2.field:
        raise UsageError("A1 and A2 must share a field")
    n = A1.nrows + A2.nrows
    x = _load_vector(args.x, A1.field, n)
    y = _load_vector(args.y, A1.field, n)
    rep = p3_deflation(A1, A2, x, y)
    out = {"g0": poly_to_json(rep.g0), "g1": poly_to_json(rep.g1), "g2": poly_to_json(rep.g2),
           "verdict": rep.verdict, "B": matrix_to_json(rep.B)}
    return out, rep.verdict


def _cmatrix(M) -> list:
    return [[complex_to_json(e) for e in row] for row in np.asarray(M)]


def _parse_sweep(text: str):
    parts = text.split(",")
    if len(parts) != 3:
        raise UsageError("--sweep expects start,stop,steps")
    try:
        start, stop, steps = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise UsageError(f"bad --sweep value {text!r}") from exc
    if steps < 1:
        raise UsageError("--sweep needs at least one step")
    return start, stop, steps


def cmd_perturb(args):
    F = family_from_json(_load_json(args.family))
    w = parse_complex(args.omega)
    h = args.h
    if h <= 0:
        raise UsageError("--h must be positive")
    if args.sweep:
        start, stop, steps = _parse_sweep(args.sweep)
        w0 = w + start
        rows = []
        for z in sorted(roots_all(family_eval(F, w0)), key=lambda c: (c.real, c.imag)):
            rows.extend(sweep(F, w0, w + stop, steps, z, h))
        return sweep_to_csv(rows), True
    A = family_eval(F, w)
    dA = family_eval(family_derivative(F), w)
    tracked = sorted((track(F, w, z) for z in roots_all(A)), key=lambda t: (t.z.real, t.z.imag))
    eigs = []
    for t in tracked:
        chk = derivative_check(F, w, t.z, h)
        eigs.append({
            "z": complex_to_json(t.z),
            "separation": t.separation,
            "u": [complex_to_json(e) for e in t.u],
            "v": [complex_to_json(e) for e in t.v],
            "z_prime": complex_to_json(eigen_derivative(F, w, t.z, t.u, t.v)),
            "z_prime_fd": complex_to_json(chk.finite_diff),
            "abs_err": chk.abs_err,
        })
    out = {"omega": complex_to_json(w), "h": h, "matrix": _cmatrix(A), "derivative_matrix": _cmatrix(dA),
           "eigenvalues": eigs}
    return out, True


def selftest(seed: int, count: int, stderr=None) -> tuple[dict, bool]:
    """Run every property suite; per-suite lines with timings go to stderr."""
    stderr = stderr if stderr is not None else sys.stderr
    results = []
    for name in suites.SUITES:
        res = suites.run_suite(name, seed, count)
        print(res.line(), file=stderr)
        for msg in res.failures:
            print(f"  {msg}", file=stderr)
        results.append(res)
    ok = all(r.ok for r in results)
    out = {
        "seed": seed,
        "count": count,
        "ok": ok,
        "suites": [{"name": r.name, "passed": r.passed, "total": r.total, "ok": r.ok,
                    "stats": {k: v for k, v in sorted(r.stats.items())}} for r in results],
    }
    return out, ok


def cmd_selftest(args):
    if args.count < 0:
        raise UsageError("--count must be non-negative")
    return selftest(args.seed, args.count, args.stderr)


# -- driver ------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="adjulab", description="Exact adjugate and eigenvalue formula toolkit.")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(fn=fn)
        return p

    for name, fn, help_ in (("adjugate", cmd_adjugate, "adjugate, determinant, rank and kernels"),
                            ("eldiv", cmd_eldiv, "elementary divisors and eigenstructure"),
                            ("adj-eldiv", cmd_adj_eldiv, "elementary divisors of the adjugate")):
        add(name, fn, help_).add_argument("--in", dest="inp", required=True, metavar="A.json")

    p = add("smith", cmd_smith, "Smith form of xI - A (or of a polynomial matrix)")
    p.add_argument("--in", dest="inp", required=True, metavar="M.json")
    p.add_argument("--transforms", action="store_true", help="also return and verify U, V")

    p = add("tm", cmd_tm, "adjugate formulas at an eigenvalue")
    p.add_argument("--in", dest="inp", required=True, metavar="A.json")
    p.add_argument("--lambda", dest="lam", required=True, metavar="S")
    p.add_argument("--u", metavar="u.json", help="right eigenvector")
    p.add_argument("--v", metavar="v.json", help="left eigenvector")

    p = add("rank1", cmd_rank1, "characteristic polynomial of A + x y^T")
    p.add_argument("--in", dest="inp", required=True, metavar="A.json")
    p.add_argument("--x", required=True, metavar="x.json")
    p.add_argument("--y", required=True, metavar="y.json")
    p.add_argument("--lambda", dest="lam", metavar="S")

    p = add("deflate", cmd_deflate, "shared eigenvalues of A1, A2 and (A1 + A2) + x y^T")
    for flag in ("--a1", "--a2", "--x", "--y"):
        p.add_argument(flag, required=True)

    p = add("perturb", cmd_perturb, "eigenvalue derivatives of a matrix family")
    p.add_argument("--family", required=True, metavar="F.json")
    p.add_argument("--omega", default="0", metavar="re,im")
    p.add_argument("--sweep", metavar="start,stop,steps",
                   help="CSV along omega + t for t from start to stop")
    p.add_argument("--h", type=float, default=1e-5)

    p = add("selftest", cmd_selftest, "run the property suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=100)
    return ap


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"adjulab: {exc}", file=stderr)
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    args.stderr = stderr

    def fail(code, exc, **extra):
        print(f"adjulab {args.command}: {type(exc).__name__}: {exc}", file=stderr)
        stdout.write(dumps({"error": type(exc).__name__, "message": str(exc), **extra}) + "\n")
        return code

    try:
        payload, ok = args.fn(args)
    except (DegreeCapExceeded, NoConvergence) as exc:
        return fail(3, exc)
    except VerificationError as exc:
        return fail(1, exc)
    except HypothesisViolated as exc:
        return fail(2, exc, which=exc.which)
    except (UsageError, AdjulabError, ValueError, OSError) as exc:
        return fail(2, exc)
    stdout.write(payload if isinstance(payload, str) else dumps(payload) + "\n")
    if not ok:
        print(f"adjulab {args.command}: verification failed", file=stderr)
        return 1
    return 0


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
