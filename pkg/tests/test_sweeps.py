"""Plumbing of the verification sweeps: reporting, generators, mutants."""

import random

from wresolve import sweeps, traces


def test_result_line_format():
    res = sweeps.SweepResult(name="demo", ok=True, cases=42, elapsed=0.1234)
    assert res.line() == "[PASS] demo: 42 cases in 0.12s"
    res = sweeps.SweepResult(
        name="demo", ok=False, cases=1, elapsed=2.0, detail="first failure: x"
    )
    assert res.line().startswith("[FAIL] demo: 1 cases in 2.00s first failure")


def test_germ_family_is_substantial():
    family = list(sweeps.iter_germ_family(r_max=4))
    assert len(family) > 300
    assert len({(g.r, g.beta, g.support) for g in family}) == len(family)


def test_random_traces_are_valid():
    rng = random.Random(99)
    for _ in range(300):
        t = sweeps.random_trace(rng)
        assert traces.validate_trace(t).valid


def test_violating_extensions_all_fail():
    rng = random.Random(7)
    for _ in range(200):
        t = sweeps.random_trace(rng)
        mutants = sweeps.violating_extensions(t)
        assert len(mutants) >= 4
        for bad in mutants:
            assert not traces.validate_trace(bad).valid


def test_violating_extensions_of_empty_trace():
    empty = traces.FactorizationTrace(())
    for bad in sweeps.violating_extensions(empty):
        assert not traces.validate_trace(bad).valid


def test_random_o3_cases_pass_constraints():
    from wresolve import chains

    rng = random.Random(5)
    for _ in range(30):
        case_a = sweeps.random_case_a(rng, 3, 1)
        chains.check_constraints(case_a)
        case_b = sweeps.random_case_b(rng, 5, 2)
        chains.check_constraints(case_b)


def test_run_all_quick():
    results = sweeps.run_all(
        cyclic_max=6,
        germ_r_max=3,
        rr_max=10,
        en_r_max=15,
        semi_max=8,
        iib_max=11,
        o3_cases=6,
        trace_count=100,
    )
    assert len(results) == 10
    assert all(r.ok for r in results)
    names = [r.name for r in results]
    assert names[0] == "cyclic-depth-search"
    assert names[-1] == "trace-rule-metamorphic"
