import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

import adjulab
from adjulab import cli, suites

NILPOTENT = {"rows": [["0", "0"], ["1", "0"]]}
SYM = {"rows": [["2", "1"], ["1", "2"]]}
SYM_FAMILY = {"coefficients": [[[2, 1], [1, 2]], [[1, 0], [0, 0]]]}

# The public library operations.  The registry also lists a few helpers.
SPEC_OPS = {
    "scalar_arith", "scalar_parse",
    "poly_arith", "poly_derivative", "poly_gcd", "poly_reversal", "poly_scale_substitute",
    "poly_squarefree", "poly_factor", "poly_is_prime_power",
    "mat_det", "mat_adjugate", "mat_rank", "char_poly", "mat_poly_eval", "eigen_structure",
    "smith_normal_form", "invariant_factors", "elementary_divisors", "companion", "rcf",
    "tm_classical", "lemma_proportionality", "adj_elementary_divisors", "adj_eigen_map",
    "chain_pairing", "adj_rank_one", "tm_general", "eigen_identity", "eigen_identity_general",
    "char_poly_update", "p2_predicate", "p3_deflation",
    "family_eval", "family_derivative", "roots_all", "eigvec_via_adjugate", "eigen_derivative",
    "derivative_check",
    "selftest",
}
EXTRA_OPS = {"eigen_identity_classical", "mat_power", "null_space_right", "null_space_left"}


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run([str(a) for a in argv], stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def write(tmp_path):
    def _write(name, data):
        p = tmp_path / name
        p.write_text(data if isinstance(data, str) else json.dumps(data))
        return p
    return _write


def test_adjugate_example(write):
    code, out, _ = invoke("adjugate", "--in", write("A.json", NILPOTENT))
    assert code == 0
    doc = json.loads(out)
    assert doc["adjugate"]["rows"] == [["0", "0"], ["-1", "0"]]
    assert doc["det"] == "0"
    assert doc["char_poly"] == ["0", "0", "1"]
    assert doc["null_space_right"] == [["0", "1"]]
    assert doc["null_space_left"] == [["1", "0"]]


def test_tm_example(write):
    code, out, _ = invoke("tm", "--in", write("A.json", NILPOTENT), "--lambda", "0")
    assert code == 0
    doc = json.loads(out)
    assert doc["tm_classical"]["equal"] is True
    assert doc["tm_classical"]["chain_pairing"] == "1"
    assert doc["tm_general_verified"] is True


def test_missing_file_exits_2(tmp_path):
    code, out, err = invoke("adjugate", "--in", tmp_path / "missing.json")
    assert code == 2
    assert json.loads(out)["error"] == "UsageError"
    assert "missing.json" in err


def test_rank1_example(write):
    code, out, _ = invoke("rank1", "--in", write("A.json", NILPOTENT), "--x", write("x.json", ["1", "0"]),
                          "--y", write("y.json", ["0", "1"]), "--lambda", "0")
    assert code == 0
    doc = json.loads(out)
    assert doc["B"]["rows"] == [["0", "1"], ["1", "0"]]
    assert doc["p_B"] == ["-1", "0", "1"]
    assert doc["p2"]["is_eigenvalue"] is False
    assert (doc["p2"]["witness_yu"], doc["p2"]["witness_vx"]) == ("1", "1")


def test_rank1_keeps_eigenvalue(write):
    code, out, _ = invoke("rank1", "--in", write("A.json", NILPOTENT), "--x", write("x.json", ["1", "0"]),
                          "--y", write("y.json", ["1", "0"]), "--lambda", "0")
    assert code == 0
    assert json.loads(out)["p2"]["is_eigenvalue"] is True


def test_deflate_example(write):
    a = write("a.json", {"rows": [["2"]]})
    x = write("x.json", ["1", "1"])
    code, out, _ = invoke("deflate", "--a1", a, "--a2", a, "--x", x, "--y", x)
    assert code == 0
    doc = json.loads(out)
    assert doc["g0"] == doc["g1"] == doc["g2"] == ["-2", "1"]
    assert doc["verdict"] is True


def test_deflate_hypothesis_violation_exits_2(write):
    # x y^T vanishes on the (1,1) entry, so B11 = A1
    code, out, _ = invoke("deflate", "--a1", write("a1.json", {"rows": [["1"]]}),
                          "--a2", write("a2.json", {"rows": [["2"]]}),
                          "--x", write("x.json", ["1", "0"]), "--y", write("y.json", ["0", "1"]))
    assert code == 2
    doc = json.loads(out)
    assert doc["error"] == "HypothesisViolated"
    assert doc["which"] == "coprime_A1_B11"


def test_perturb_symmetric_family(write):
    code, out, _ = invoke("perturb", "--family", write("F.json", SYM_FAMILY), "--omega", "0,0")
    assert code == 0
    eig = {round(e["z"][0], 9): e for e in json.loads(out)["eigenvalues"]}
    assert abs(complex(*eig[3.0]["z_prime"]) - 0.5) < 1e-12
    assert eig[3.0]["abs_err"] <= 1e-6


def test_perturb_sweep_csv(write):
    code, out, _ = invoke("perturb", "--family", write("F.json", {"coefficients": [[[0, 0], [0, 2]], [[1, 0], [0, 0]]]}),
                          "--omega", "0", "--sweep", "0,0.5,6")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "omega,z,z_prime_formula,z_prime_fd,abs_err"
    assert len(lines) == 1 + 2 * 6
    for row in lines[1:]:
        assert float(row.split(",")[-1]) <= 1e-9


def test_perturb_root_crossing_exits_2(write):
    code, out, _ = invoke("perturb", "--family", write("F.json", {"coefficients": [[[0, 0], [0, 0]]]}))
    assert code == 2
    assert json.loads(out)["error"] in ("RootCrossing", "NotSimple")


def test_smith_poly_input_and_transforms(write):
    P = {"rows": [[["0", "1"], ["0"]], [["-1"], ["0", "1"]]]}
    code, out, _ = invoke("smith", "--in", write("P.json", P), "--transforms")
    assert code == 0
    doc = json.loads(out)
    assert doc["smith"]["diagonal"] == [["1"], ["0", "0", "1"]]
    assert doc["transforms_verified"] is True


def test_eldiv_gf2(write):
    A = {"field": {"kind": "gfp", "p": 2}, "rows": [["0", "1"], ["1", "1"]]}
    code, out, _ = invoke("eldiv", "--in", write("A.json", A))
    assert code == 0
    doc = json.loads(out)
    assert doc["elementary_divisors"] == [{"base": ["1", "1", "1"], "exponent": 1}]
    assert doc["eigenstructure"] == []


def test_adj_eldiv_agrees_with_oracle(write):
    code, out, _ = invoke("adj-eldiv", "--in", write("A.json", {"rows": [["2", "1"], ["0", "2"]]}))
    assert code == 0
    assert json.loads(out)["equal"] is True


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["tm", "--in", "A.json"],
    ["selftest", "--count", "x"],
])
def test_usage_errors_exit_2(argv):
    code, _, _ = invoke(*argv)
    assert code == 2


def test_bad_inputs_exit_2(write):
    assert invoke("adjugate", "--in", write("bad.json", "{not json"))[0] == 2
    assert invoke("adjugate", "--in", write("r.json", {"rows": [["1", "2"]]}))[0] == 2
    assert invoke("tm", "--in", write("A.json", NILPOTENT), "--lambda", "1/0")[0] == 2
    assert invoke("tm", "--in", write("B.json", NILPOTENT), "--lambda", "5")[0] == 2
    assert invoke("selftest", "--count", "-1")[0] == 2


def test_degree_cap_exits_3(write):
    # rational companion of x^13 + x + 1: no rational roots, degree above the factoring cap
    n = 13
    rows = [["0"] * n for _ in range(n)]
    for i in range(1, n):
        rows[i][i - 1] = "1"
    rows[0][n - 1] = rows[1][n - 1] = "-1"
    A = {"rows": rows}
    code, out, _ = invoke("eldiv", "--in", write("C.json", A))
    assert code == 3
    assert json.loads(out)["error"] == "DegreeCapExceeded"


def test_formula_fault_exits_1(write, monkeypatch):
    monkeypatch.setattr(cli, "adj_elementary_divisors", lambda A: [])
    code, out, err = invoke("adj-eldiv", "--in", write("A.json", {"rows": [["2", "1"], ["0", "2"]]}))
    assert code == 1
    assert json.loads(out)["equal"] is False
    assert "verification failed" in err


def test_invariant_violation_exits_1(write, monkeypatch):
    from adjulab import matrix

    real = matrix._det_gauss
    monkeypatch.setattr(matrix, "_det_gauss", lambda M: real(M) + 1)
    code, out, _ = invoke("adjugate", "--in", write("A.json", {"rows": [["2", "1"], ["0", "3"]]}))
    assert code == 1
    assert json.loads(out)["error"] == "InvariantViolation"


def test_output_is_deterministic(write):
    a = write("A.json", {"rows": [["1", "2", "0"], ["0", "1", "0"], ["3", "1", "2"]]})
    for argv in (["adjugate", "--in", a], ["smith", "--in", a, "--transforms"], ["eldiv", "--in", a],
                 ["tm", "--in", a, "--lambda", "2"], ["selftest", "--seed", "1", "--count", "0"]):
        # selftest stderr carries timings, so only stdout is compared
        first, second = invoke(*argv), invoke(*argv)
        assert first[0] == second[0] == 0
        assert first[1] == second[1]


def test_subprocess_is_byte_identical(write):
    f = write("F.json", SYM_FAMILY)
    cmd = [sys.executable, "-m", "adjulab", "perturb", "--family", str(f), "--omega", "0.1,0"]
    runs = [subprocess.run(cmd, capture_output=True, check=True).stdout for _ in range(2)]
    assert runs[0] == runs[1]
    assert json.loads(runs[0])["omega"] == [0.1, 0.0]


def test_selftest_count_zero_is_vacuous():
    code, out, err = invoke("selftest", "--seed", "42", "--count", "0")
    assert code == 0
    doc = json.loads(out)
    assert doc["ok"] is True
    assert [s["name"] for s in doc["suites"]] == list(suites.SUITES)
    assert all(s["total"] == 0 for s in doc["suites"])
    assert len(err.strip().splitlines()) == len(suites.SUITES)


CHEAP = ("tm_classical", "adj_zero", "adj_rank_one", "char_poly_update", "p3_violating", "numeric_adjugate")


def test_selftest_small_count_passes(monkeypatch):
    monkeypatch.setattr(suites, "SUITES", {k: suites.SUITES[k] for k in CHEAP})
    code, out, _ = invoke("selftest", "--seed", "42", "--count", "3")
    assert code == 0
    assert all(s["ok"] and s["total"] > 0 for s in json.loads(out)["suites"])


def test_selftest_injected_fault_exits_1(monkeypatch):
    # every adjugate seen by the suites is doubled
    monkeypatch.setattr(suites, "SUITES", {k: suites.SUITES[k] for k in CHEAP})
    real = suites.mat_adjugate
    monkeypatch.setattr(suites, "mat_adjugate", lambda A: real(A).scale(A.field(2)))
    code, out, err = invoke("selftest", "--seed", "42", "--count", "3")
    assert code == 1
    doc = json.loads(out)
    assert doc["ok"] is False
    assert not next(s for s in doc["suites"] if s["name"] == "tm_classical")["ok"]
    assert "FAIL" in err


def test_selftest_crash_is_a_failure(monkeypatch):
    def boom(seed, count):
        raise RuntimeError("boom")

    monkeypatch.setattr(suites, "SUITES", {"boom": boom})
    code, out, _ = invoke("selftest", "--count", "1")
    assert code == 1
    assert json.loads(out)["suites"][0]["ok"] is False


# -- coverage audit -----------------------------------------------------------------

def _audit_inputs(write):
    a = write("A.json", SYM)
    return {
        "adjugate": ["adjugate", "--in", a],
        "smith": ["smith", "--in", a, "--transforms"],
        "eldiv": ["eldiv", "--in", write("E.json", {"rows": [["2", "1", "0"], ["0", "2", "0"], ["0", "0", "3"]]})],
        "adj-eldiv": ["adj-eldiv", "--in", write("N.json", {"rows": [["2", "1"], ["0", "2"]]})],
        "tm": ["tm", "--in", a, "--lambda", "3"],
        "rank1": ["rank1", "--in", write("R.json", NILPOTENT), "--x", write("x.json", ["1", "0"]),
                  "--y", write("y.json", ["0", "1"]), "--lambda", "0"],
        "deflate": ["deflate", "--a1", write("d.json", {"rows": [["2"]]}), "--a2", write("d.json", {"rows": [["2"]]}),
                    "--x", write("xx.json", ["1", "1"]), "--y", write("xx.json", ["1", "1"])],
        "perturb": ["perturb", "--family", write("F.json", SYM_FAMILY), "--omega", "0"],
        "selftest": ["selftest", "--count", "0"],
    }


def _traced(argv):
    pkg = str(Path(adjulab.__file__).parent)
    seen = set()

    def prof(frame, event, arg):
        if event == "call" and frame.f_code.co_filename.startswith(pkg):
            seen.add(frame.f_code.co_name)

    sys.setprofile(prof)
    try:
        code = invoke(*argv)[0]
    finally:
        sys.setprofile(None)
    return code, seen


def test_registry_covers_every_operation_once():
    listed = [op for ops in cli.OPERATIONS.values() for op in ops]
    assert len(listed) == len(set(listed))
    assert set(listed) == SPEC_OPS | EXTRA_OPS
    assert set(cli.OPERATIONS) == set(cli.build_parser()._subparsers._group_actions[0].choices)


def test_every_registered_operation_is_reached(write):
    inputs = _audit_inputs(write)
    assert set(inputs) == set(cli.OPERATIONS)
    for name, argv in inputs.items():
        code, seen = _traced(argv)
        assert code == 0, name
        missing = set(cli.OPERATIONS[name]) - seen
        assert not missing, f"{name} never calls {sorted(missing)}"


def test_operations_exist_in_package():
    for op in SPEC_OPS | EXTRA_OPS:
        if op != "selftest":
            assert callable(getattr(adjulab, op)), op


def test_matrix_field_flows_to_lambda(write):
    # lambda is parsed in the field of the input file
    A = {"field": {"kind": "gfp", "p": 5}, "rows": [["1", "0"], ["0", "3"]]}
    code, out, _ = invoke("tm", "--in", write("A.json", A), "--lambda", "6")
    assert code == 0
    assert json.loads(out)["lambda"] == "1"
