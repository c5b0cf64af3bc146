"""Always-on structural identities, with counters for reporting.

Every adjugate the library builds is checked against A Adj(A) = Adj(A) A =
det(A) I, and every Smith form against its divisibility chain.  A failure
raises :class:`InvariantViolation`; the counters record how many were
checked so verification runs can report coverage.
"""
from collections import Counter

from .errors import InvariantViolation

counts: Counter = Counter()


def check_adjugate(A, adj, det) -> None:
    n = A.nrows
    target = A.identity_like().scale(det)
    if A * adj != target or adj * A != target:
        raise InvariantViolation(f"A Adj(A) != det(A) I for the {n}x{n} matrix {A!r}")
    counts["adjugate"] += 1


def check_divisibility(diagonal) -> None:
    for a, b in zip(diagonal, diagonal[1:]):
        if not a.divides(b):
            raise InvariantViolation(f"Smith chain broken: {a} does not divide {b}")
    for d in diagonal:
        if not d.is_monic():
            raise InvariantViolation(f"Smith entry {d} is not monic")
    counts["smith_chain"] += 1


def check_matrix(A) -> None:
    """Run both structural checks on a square scalar matrix A."""
    from .canonical import invariant_factors
    from .matrix import mat_adjugate

    mat_adjugate(A)
    invariant_factors(A)
    counts["matrices"] += 1


def reset() -> None:
    counts.clear()
