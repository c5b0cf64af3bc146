"""Exact adjugates, canonical forms and eigenvalue formulas over Q and GF(p)."""
from .canonical import (
    ElementaryDivisor,
    SmithForm,
    companion,
    elementary_divisors,
    invariant_factors,
    rcf,
    smith_normal_form,
)
from .errors import *  # noqa: F401,F403
from .factor import Factorization, poly_factor, poly_is_prime_power, poly_squarefree
from .fields import GF, QQ, Mod, scalar_arith, scalar_parse
from .matrix import (
    EigenStructure,
    Matrix,
    char_poly,
    eigen_structure,
    mat_adjugate,
    mat_det,
    mat_poly_eval,
    mat_power,
    mat_rank,
    null_space_left,
    null_space_right,
)
from .perturbation import (
    MatrixFamily,
    derivative_check,
    eigen_derivative,
    eigvec_via_adjugate,
    family_derivative,
    family_eval,
    roots_all,
)
from .poly import (
    Poly,
    poly_arith,
    poly_derivative,
    poly_gcd,
    poly_reversal,
    poly_scale_substitute,
)
from .rankone import UpdateProblem, char_poly_update, p2_predicate, p3_deflation
from .tm import (
    RankOneRep,
    ZeroMatrix,
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
)

__version__ = "0.1.0"
