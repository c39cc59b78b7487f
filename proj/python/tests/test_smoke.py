import json

import pytest

import rbcsp


def small_instance(seed=3, planted=False):
    params = rbcsp.derive_params(8, d=8, seed=seed)
    return rbcsp.gen_instance(params, planted=planted)


def test_params_at_threshold():
    params = rbcsp.derive_params(10, d=10, seed=1)
    assert params.b == 5
    assert params.p_eff == pytest.approx(0.5)
    assert rbcsp.expected_solution_count(params, unrounded=True) == pytest.approx(0.5, rel=1e-9)


def test_json_round_trip_is_byte_exact():
    inst = small_instance()
    text = inst.to_json()
    again = rbcsp.parse_instance(text)
    assert again == inst
    assert again.to_json() == text
    assert json.loads(text)["format"] == 1


def test_solve_matches_brute_force():
    inst = rbcsp.gen_instance(rbcsp.derive_params(7, d=8, seed=11))
    report = rbcsp.solve(inst)
    assert report["count"] == rbcsp.brute_force_count(inst)
    for sol in report["solutions"]:
        assert inst.is_solution(sol)


def test_planted_solution_is_found():
    inst = small_instance(seed=5, planted=True)
    assert inst.is_solution(inst.planted)
    report = rbcsp.solve(inst, mode="decide")
    assert report["status"] == "SAT"


def test_budget_exhaustion_is_explicit():
    report = rbcsp.solve(small_instance(), budget=2)
    assert report["status"] == "BUDGET_EXHAUSTED"
    assert report["count"] is None


def test_dimacs_header():
    inst = small_instance()
    text = rbcsp.encode_dimacs(inst)
    header = next(line for line in text.splitlines() if line.startswith("p cnf"))
    _, _, nvars, nclauses = header.split()
    assert int(nvars) == 8 * 3
    assert int(nclauses) == sum(1 for line in text.splitlines() if line and line[0] not in "cp")


def test_decode_rejects_out_of_range():
    params = rbcsp.derive_params(2, d=3)
    with pytest.raises(rbcsp.RbError):
        rbcsp.decode_assignment([True, True, False, False], params)


def test_second_moment_boundary_terms():
    report = rbcsp.second_moment(rbcsp.derive_params(10, d=10))
    assert len(report["f_terms"]) == 11
    assert report["Fn"] * report["EX"] == pytest.approx(1.0, rel=1e-9)


def test_flip_sat_to_unsat_breaks_the_solution():
    inst = small_instance(seed=5, planted=True)
    sol = rbcsp.solve(inst, mode="decide")["solutions"][0]
    x = inst.scopes[0][0]
    post, outcome = rbcsp.flip_sat_to_unsat(inst, sol, x)
    assert not post.is_solution(sol)
    assert outcome["direction"] == "sat_to_unsat"


def test_sweep_is_deterministic():
    a = rbcsp.run_phase_sweep(n=6, d=6, r_factors=[0.5, 1.5], trials=10, seed=4)
    b = rbcsp.run_phase_sweep(n=6, d=6, r_factors=[0.5, 1.5], trials=10, seed=4, jobs=2)
    assert a == b
    for rec in a:
        assert rec["sat_count"] + rec["unsat_count"] + rec["budget_exhausted_count"] == rec["trials"]
    assert a[0]["sat_count"] >= a[1]["sat_count"]


def test_wilson_interval_contains_estimate():
    est, lo, hi = rbcsp.wilson_interval(7, 20)
    assert lo < est < hi
