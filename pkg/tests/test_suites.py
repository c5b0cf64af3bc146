import numpy as np
import pytest

from adjulab import checks, suites
from adjulab.canonical import invariant_factors
from adjulab.factor import roots_in_field
from adjulab.fields import GF, QQ
from adjulab.matrix import char_poly, mat_det, mat_rank
from adjulab.perturbation import roots_all, separation, spectral_scale

FAST = [name for name in suites.SUITES if name != "p2_exhaustive"]


@pytest.mark.parametrize("name", FAST)
def test_suite_passes_at_small_count(name):
    res = suites.run_suite(name, 7, 3)
    assert res.ok, res.failures
    assert res.total > 0


@pytest.mark.parametrize("name", list(suites.SUITES))
def test_count_zero_is_empty(name):
    res = suites.run_suite(name, 7, 0)
    assert res.ok and res.total == 0


@pytest.mark.parametrize("name", ["tm_classical", "p3_satisfying", "eigen_derivative"])
def test_suites_are_seed_deterministic(name):
    a = suites.run_suite(name, 11, 4)
    b = suites.run_suite(name, 11, 4)
    assert (a.passed, a.total, a.stats) == (b.passed, b.total, b.stats)


def test_exhaustive_small_case_counts():
    # n = 1 over GF(2) and GF(3): A = [a] has the single eigenvalue a
    res = suites.suite_p2_exhaustive(0, 1, max_n=1)
    assert res.ok
    assert res.total == 2 + 3


def test_simple_eigenvalue_instances_have_a_simple_eigenvalue():
    for field in (GF(5), QQ):
        for A, eig in suites._simple_eigenvalue_instances(3, 20, field):
            assert any(simple for *_, simple in eig)
            roots = dict(roots_in_field(char_poly(A)))
            for lam, _, _, simple in eig:
                assert (roots[lam] == 1) == simple


def test_nonsingular_instances_are_nonsingular():
    for A in suites._nonsingular_instances(3, 30, GF(7)):
        assert mat_det(A) != 0


def test_nilpotent_pair_instances_have_rank_deficit_two():
    for A in suites._nilpotent_pair_instances(3, 20, GF(5)):
        assert mat_rank(A) <= A.nrows - 2


def test_single_nilpotent_instances_have_one_block_at_zero():
    for A, _ in suites._single_nilpotent_instances(3, 20, QQ):
        assert mat_rank(A) == A.nrows - 1


def test_nonderogatory_has_one_invariant_factor():
    import random

    rng = random.Random(0)
    for n in range(1, 5):
        assert len(invariant_factors(suites._nonderogatory(n, GF(7), rng))) == 1


def test_random_family_is_well_separated():
    rng = np.random.default_rng(5)
    for _ in range(10):
        F, w, roots = suites.random_family(rng)
        A = F(w)
        assert len(roots) == F.n >= 2
        gap = min(separation(roots_all(A), k) for k in range(F.n))
        assert gap >= suites.GAP_MIN * spectral_scale(A, roots)


def test_touch_counts_matrices():
    checks.reset()
    suites.run_suite("adj_zero", 1, 2)
    assert checks.counts["matrices"] >= 6
    assert checks.counts["adjugate"] >= checks.counts["matrices"]


def test_failure_list_is_capped():
    res = suites.SuiteResult("x")
    for _ in range(25):
        res.record(False, "bad")
    assert res.total == 25 and res.passed == 0
    assert len(res.failures) == 10
    assert res.line().startswith("FAIL x: 0/25")
