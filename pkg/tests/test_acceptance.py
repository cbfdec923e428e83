"""Acceptance gate: the eight cross-check criteria the library must hold.

Every criterion reruns one of the verification sweeps, which check a
closed-form claim against an independent route (exhaustive search,
linear threshold scan, simulated blow-up chains, metamorphic trace
mutations).  All comparisons are exact; the only tolerances are wall-
clock budgets.  One [PASS]/[FAIL] line is printed per criterion.
"""

from wresolve import sweeps


def _report(capsys, number, result, budget, extra=""):
    ok = result.ok and result.elapsed < budget
    status = "PASS" if ok else "FAIL"
    tail = f" {extra}" if extra else ""
    with capsys.disabled():
        print(
            f"[{status}] criterion {number}: {result.name} "
            f"({result.cases} cases, {result.elapsed:.2f}s, "
            f"budget {budget:g}s){tail}",
            flush=True,
        )
    assert result.ok, f"criterion {number} failed: {result.detail}"
    assert result.elapsed < budget, (
        f"criterion {number} took {result.elapsed:.2f}s (budget {budget:g}s)"
    )


def test_criterion_1_cyclic_depth_exhaustive(capsys):
    # search depth of every cyclic point of index <= 25 equals r - 1
    result = sweeps.sweep_cyclic_depth(25)
    _report(capsys, 1, result, budget=10)
    assert result.cases >= 24


def test_criterion_2_germ_depth_dual_route(capsys):
    # formula depth == exhaustive-search depth across the support family
    result = sweeps.sweep_germ_depth(7)
    _report(capsys, 2, result, budget=60)
    assert result.cases >= 1000


def test_criterion_3_residual_recursion(capsys):
    # one blow-up shifts (lam, t, nu) exactly as the recursion predicts
    result = sweeps.sweep_residual_recursion(7)
    _report(capsys, 3, result, budget=60)
    assert result.cases >= 100


def test_criterion_4_chi_threshold_bounds(capsys):
    # closed-form axial-weight bounds match the linear threshold scan
    result = sweeps.sweep_rr_bounds(40)
    _report(capsys, 4, result, budget=5)


def test_criterion_5_e11_depths(capsys):
    # the sporadic contraction: dep(Y) = 6 against dep(X) <= 7
    result = sweeps.check_e11()
    _report(capsys, 5, result, budget=1)


def test_criterion_6_en_intersections(capsys):
    # the three neighborhood sweeps, sharing one wall-clock budget
    budget = 30
    exc = sweeps.sweep_en_exceptional(99)
    semi = sweeps.sweep_en_semistable(30)
    iib = sweeps.sweep_en_iib(51)
    elapsed = exc.elapsed + semi.elapsed + iib.elapsed
    joined = sweeps.SweepResult(
        name="en-intersection-numbers",
        ok=exc.ok and semi.ok and iib.ok,
        cases=exc.cases + semi.cases + iib.cases,
        elapsed=elapsed,
        detail=(exc.detail or semi.detail or iib.detail),
    )
    _report(capsys, 6, joined, budget=budget)


def test_criterion_7_o3_chain_calculus(capsys):
    # at least 200 randomized chain cases per shape, exactly checked
    result = sweeps.sweep_o3_chains(cases_per_shape=200, seed=20240817)
    _report(capsys, 7, result, budget=30)
    assert result.cases >= 400


def test_criterion_8_trace_metamorphic(capsys):
    # 10^4 random valid traces accepted, every single-step mutant rejected
    result = sweeps.sweep_trace_rules(10000, seed=20240818)
    _report(capsys, 8, result, budget=5)
    assert result.cases == 10000
