"""JSON and CSV formats shared by the CLI.

Scalars are always text ("a/b", "a", or a residue), so exact values survive
the round trip.  Complex values in the perturbation formats are [re, im].
"""
from __future__ import annotations

import csv
import io
import json

import numpy as np

from .canonical import ElementaryDivisor, SmithForm
from .errors import ParseError
from .fields import QQ, Field, parse_field
from .matrix import Matrix
from .perturbation import MatrixFamily
from .poly import poly_from_json, poly_to_json


def dumps(obj) -> str:
    """Deterministic JSON text."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


def scalar_to_json(x, field: Field) -> str:
    return field.format(x)


def vector_to_json(v, field: Field) -> list[str]:
    return [field.format(e) for e in v]


def vector_from_json(data, field: Field) -> tuple:
    if isinstance(data, dict):
        if "field" in data and parse_field(data["field"]) != field:
            raise ParseError("vector field does not match the matrix field")
        data = data.get("entries")
    if not isinstance(data, list):
        raise ParseError("vector JSON must be a list of scalars or {'entries': [...]}")
    return tuple(field.parse(str(e)) for e in data)


def matrix_to_json(M: Matrix) -> dict:
    if M.is_poly:
        rows = [[poly_to_json(e) for e in r] for r in M.rows]
    else:
        rows = [[M.field.format(e) for e in r] for r in M.rows]
    return {"field": M.field.to_json(), "rows": rows}


def matrix_from_json(data) -> Matrix:
    if not isinstance(data, dict) or "rows" not in data:
        raise ParseError("matrix JSON needs a 'rows' array")
    field = parse_field(data.get("field", {"kind": "rational"}))
    rows = data["rows"]
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise ParseError("'rows' must be a list of lists")
    if len({len(r) for r in rows}) > 1:
        raise ParseError("ragged matrix rows")
    if rows and rows[0] and isinstance(rows[0][0], list):
        return Matrix([[poly_from_json(e, field) for e in r] for r in rows], field, poly=True)
    return Matrix([[field.parse(str(e)) for e in r] for r in rows], field)


def eldiv_to_json(divisors: list[ElementaryDivisor]) -> list[dict]:
    return [{"base": poly_to_json(d.base), "exponent": d.exponent} for d in divisors]


def eldiv_from_json(data, field: Field = QQ) -> list[ElementaryDivisor]:
    try:
        return [ElementaryDivisor(poly_from_json(d["base"], field), int(d["exponent"])) for d in data]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad elementary divisor list: {exc}") from exc


def smith_to_json(S: SmithForm) -> dict:
    out = {"diagonal": [poly_to_json(d) for d in S.diagonal], "rank": S.rank}
    if S.U is not None:
        out["U"] = matrix_to_json(S.U)
        out["V"] = matrix_to_json(S.V)
    return out


def rank_one_to_json(rep) -> dict:
    if rep.is_zero:
        return {"kind": "zero", "n": rep.n}
    f = rep.field
    return {"kind": "rank_one", "u": vector_to_json(rep.u, f), "v": vector_to_json(rep.v, f),
            "coefficient": f.format(rep.coefficient)}


def tm_report_to_json(rep, field: Field) -> dict:
    out = {
        "lhs": matrix_to_json(rep.lhs),
        "rhs": matrix_to_json(rep.rhs),
        "equal": rep.equal,
        "inner_product": field.format(rep.inner_product),
        "derivative_value": field.format(rep.derivative_value),
    }
    if rep.chain_pairing is not None:
        out["chain_pairing"] = field.format(rep.chain_pairing)
    if rep.rank_one is not None:
        out["rank_one"] = rank_one_to_json(rep.rank_one)
    return out


# -- complex formats ------------------------------------------------------------

def complex_to_json(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def _complex_entry(e) -> complex:
    if isinstance(e, (list, tuple)) and len(e) == 2:
        return complex(float(e[0]), float(e[1]))
    if isinstance(e, (int, float)):
        return complex(e)
    raise ParseError(f"complex entry must be [re, im], got {e!r}")


def family_from_json(data) -> MatrixFamily:
    if not isinstance(data, dict) or not isinstance(data.get("coefficients"), list):
        raise ParseError("family JSON needs a 'coefficients' list")
    try:
        mats = [np.array([[_complex_entry(e) for e in row] for row in m], dtype=complex)
                for m in data["coefficients"]]
        return MatrixFamily(mats)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def family_to_json(F: MatrixFamily) -> dict:
    return {"coefficients": [[[complex_to_json(e) for e in row] for row in c] for c in F.coefficients]}


def parse_complex(text: str) -> complex:
    """'re,im' or a single real number."""
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]))
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise ParseError(f"bad complex number {text!r}; expected 're,im'")


def _fmt_complex(z) -> str:
    z = complex(z)
    return f"{z.real:.17g}{z.imag:+.17g}j"


def sweep_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["omega", "z", "z_prime_formula", "z_prime_fd", "abs_err"])
    for r in rows:
        w.writerow([_fmt_complex(r["omega"]), _fmt_complex(r["z"]), _fmt_complex(r["formula"]),
                    _fmt_complex(r["finite_diff"]), f"{r['abs_err']:.6e}"])
    return buf.getvalue()
