"""Verification sweeps shared by the CLI ``verify`` command and the test
suite's acceptance gate.

Each sweep cross-checks one family of claims by an independent route
(closed formula against exhaustive search, threshold bound against a
linear scan, simulated chain stages against closed-form exponents) and
reports a SweepResult. Everything is deterministic; the randomized
sweeps take an explicit seed.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import chains, germs, neighborhoods, riemannroch, traces
from .baskets import Basket, TerminalClass, aw as basket_aw, xi as basket_xi
from .errors import InvalidParameter
from .germs import CARGerm


@dataclass
class SweepResult:
    name: str
    ok: bool
    cases: int
    elapsed: float
    detail: str = ""

    def line(self) -> str:
        mark = "PASS" if self.ok else "FAIL"
        extra = f" {self.detail}" if self.detail else ""
        return (
            f"[{mark}] {self.name}: {self.cases} cases "
            f"in {self.elapsed:.2f}s{extra}"
        )


def _result(name, start, cases, failures) -> SweepResult:
    detail = "" if not failures else f"first failure: {failures[0]}"
    return SweepResult(
        name=name,
        ok=not failures,
        cases=cases,
        elapsed=time.perf_counter() - start,
        detail=detail,
    )


def _units(r):
    return [b for b in range(1, r) if gcd(b, r) == 1]


def sweep_cyclic_depth(r_max: int = 25) -> SweepResult:
    """Exhaustive-search depth of cyclic points vs the closed form r - 1."""
    start = time.perf_counter()
    cases = 0
    failures = []
    for r in range(2, r_max + 1):
        found = germs.cyclic_depth_search(r)
        if found != r - 1:
            failures.append(f"index {r}: search {found} != {r - 1}")
        cases += 1
        for beta in _units(r):
            g = CARGerm(r, beta, frozenset({(0, 1)}))
            via_germ = germs.depth_search(g)
            if via_germ != r - 1:
                failures.append(f"index {r}, beta {beta}: germ route {via_germ}")
            cases += 1
    return _result("cyclic-depth-search", start, cases, failures)


def iter_germ_supports(i_max=4, j_max=8, lam_max=4, tri_i_max=2, tri_j_max=4):
    """Systematic support family: all valid singletons and pairs on the
    (i_max, j_max) grid plus all triples on a reduced grid."""
    grid = [
        (i, j)
        for i in range(i_max + 1)
        for j in range(j_max + 1)
        if (i, j) != (0, 0)
    ]
    axial = [(0, j) for j in range(1, lam_max + 1)]
    for a in axial:
        yield frozenset({a})
    seen = set()
    for a in axial:
        for p in grid:
            if p == a:
                continue
            s = frozenset({a, p})
            if s in seen:
                continue
            seen.add(s)
            yield s
    small = [
        (i, j)
        for i in range(tri_i_max + 1)
        for j in range(tri_j_max + 1)
        if (i, j) != (0, 0)
    ]
    for combo in itertools.combinations(small, 3):
        axials = [j for i, j in combo if i == 0]
        if not axials or min(axials) > lam_max:
            continue
        yield frozenset(combo)


def iter_germ_family(r_max=7, **support_kw):
    for support in iter_germ_supports(**support_kw):
        for r in range(2, r_max + 1):
            for beta in _units(r):
                yield CARGerm(r, beta, support)


def sweep_germ_depth(r_max: int = 7, **support_kw) -> SweepResult:
    """Search depth == formula depth == lam*r - t, inside the basket window."""
    start = time.perf_counter()
    cases = 0
    failures = []
    for g in iter_germ_family(r_max, **support_kw):
        cases += 1
        searched = germs.depth_search(g)
        formula = germs.depth_formula(g)
        direct = germs.axial_weight(g) * g.r - germs.tvalue(g)
        bk = _germ_basket(g)
        lo = basket_xi(bk) - basket_aw(bk)
        hi = basket_xi(bk) - 1
        if not (searched == formula == direct):
            failures.append(f"{_germ_tag(g)}: search {searched}, formula {formula}")
        elif not (lo <= searched <= hi):
            failures.append(f"{_germ_tag(g)}: depth {searched} outside [{lo}, {hi}]")
    return _result("germ-depth-dual-route", start, cases, failures)


def _germ_basket(g: CARGerm) -> Basket:
    from .baskets import basket_of

    return basket_of(TerminalClass.ca_r(g))


def _germ_tag(g: CARGerm) -> str:
    return f"(r={g.r}, beta={g.beta}, supp={sorted(g.support)})"


def sweep_residual_recursion(r_max: int = 7, **support_kw) -> SweepResult:
    """After one blow-up: lam drops by nu_1, t drops by 1, nu reindexes."""
    start = time.perf_counter()
    cases = 0
    failures = []
    for g in iter_germ_family(r_max, **support_kw):
        lam = germs.axial_weight(g)
        n1 = germs.nu(g, 1)
        if n1 >= lam:
            continue
        cases += 1
        r1, r2 = germs.admissible_splits(g)[0]
        res = germs.blowup_step(g, r1, r2).residual
        if res is None:
            failures.append(f"{_germ_tag(g)}: missing residual")
            continue
        if germs.axial_weight(res) != lam - n1:
            failures.append(f"{_germ_tag(g)}: lam recursion broke")
        if germs.tvalue(res) != germs.tvalue(g) - 1:
            failures.append(f"{_germ_tag(g)}: t recursion broke")
        for s in range(2, lam + 2):
            if germs.nu(res, s - 1) != germs.nu(g, s) - n1:
                failures.append(f"{_germ_tag(g)}: nu recursion broke at s={s}")
                break
    return _result("residual-recursion", start, cases, failures)


def sweep_rr_bounds(rp_max: int = 40) -> SweepResult:
    """Axial-weight bounds from the chi threshold, plus case depth checks."""
    start = time.perf_counter()
    cases = 0
    failures = []
    plans = [
        (riemannroch.E1_A4, range(5, rp_max + 1)),
        (riemannroch.E1_A2, range(3, rp_max + 1)),
        (riemannroch.E2, range(2, rp_max + 1)),
    ]
    for tag, rps in plans:
        for rp in rps:
            case = riemannroch.ContractionCase(tag, rp)
            try:
                data = riemannroch.case_data(case)
            except InvalidParameter:
                continue  # non-terminal basket for this parity of r'
            cases += 1
            bound = riemannroch.aw_upper_bound(case)
            if bound > data.sufficient_bound:
                failures.append(f"{tag} r'={rp}: bound {bound} too large")
                continue
            # independent route: linear scan of the chi threshold
            scan = 0
            awx = 1
            while riemannroch._check_aw_consistency(case, awx) >= 1:
                scan = awx
                awx += 1
            if scan != bound:
                failures.append(f"{tag} r'={rp}: scan {scan} != bound {bound}")
                continue
            if bound >= 1 and riemannroch._check_aw_consistency(case, bound) < 1:
                failures.append(f"{tag} r'={rp}: threshold fails at the bound")
            if riemannroch._check_aw_consistency(case, bound + 1) >= 1:
                failures.append(f"{tag} r'={rp}: threshold holds above the bound")
            for awx in range(1, data.sufficient_bound + 1):
                rep = riemannroch.case_depth_check(case, awx)
                if not rep.ok:
                    failures.append(f"{tag} r'={rp} aw={awx}: depth check failed")
                    break
            if tag in (riemannroch.E1_A4, riemannroch.E1_A2):
                rep = riemannroch.case_depth_check(case, rp - 1)
                if rep.dep_y_min - 1 != 2 * rp - 2:
                    failures.append(f"{tag} r'={rp}: dep(Y) - 1 != 2r' - 2")
    return _result("chi-threshold-bounds", start, cases, failures)


def check_e11() -> SweepResult:
    """E11 case: dep(Y) = 6 from the index-2 and index-6 points, dep(X) <= 7."""
    start = time.perf_counter()
    failures = []
    rep = riemannroch.case_depth_check(riemannroch.ContractionCase(riemannroch.E11))
    if rep.dep_y_min != 6 or rep.dep_y_max != 6:
        failures.append(f"dep(Y) = {rep.dep_y_min} != 6")
    if rep.dep_x_upper != 7:
        failures.append(f"dep(X) bound = {rep.dep_x_upper} != 7")
    if not rep.ok:
        failures.append("depth comparison failed")
    return _result("e11-depth", start, 1, failures)


def sweep_en_exceptional(r_max: int = 99, r1_steps: int = 3) -> SweepResult:
    """Exceptional IA+IA: s*r1 >= 2 and K_Y.C_Y <= 0 for admissible r1 <= 3r."""
    start = time.perf_counter()
    cases = 0
    failures = []
    for r in range(5, r_max + 1, 2):
        for a2 in range(r // 2 + 1, r):
            if gcd(a2, r) != 1:
                continue
            case = neighborhoods.ExceptionalIAIACase(r, a2)
            base = neighborhoods.minimal_r1(case)
            for step in range(r1_steps):
                r1 = base + step * r
                cases += 1
                v = neighborhoods.key_check(case, r1=r1)
                if v.s * r1 < 2:
                    failures.append(f"r={r} a2={a2} r1={r1}: witness failed")
                elif not v.nonpositive:
                    failures.append(f"r={r} a2={a2} r1={r1}: K_Y.C_Y = {v.ky_cy} > 0")
    return _result("en-exceptional-iaia", start, cases, failures)


def sweep_en_semistable(r_max: int = 30) -> SweepResult:
    """Semistable IA+IA: r1*delta >= r' and K_Y.C_Y <= 0 over all shapes."""
    start = time.perf_counter()
    cases = 0
    failures = []
    for rp in range(2, r_max + 1):
        for r in range(rp, r_max + 1):
            for a in _units(r):
                for ap in _units(rp):
                    if a * rp + ap * r - r * rp <= 0:
                        continue
                    case = neighborhoods.SemistableIAIACase(r, a, rp, ap)
                    cases += 1
                    v = neighborhoods.key_check(case)
                    if v.r1 * v.delta < rp:
                        failures.append(f"{(r, a, rp, ap)}: witness failed")
                    elif not v.nonpositive:
                        failures.append(f"{(r, a, rp, ap)}: K_Y.C_Y > 0")
    return _result("en-semistable-iaia", start, cases, failures)


def sweep_en_iib(entry_max: int = 51) -> SweepResult:
    """IIB: fiber degree min(3/r1, 2/r2) <= 1 over the congruence grid."""
    start = time.perf_counter()
    cases = 0
    failures = []
    r1s = range(3, entry_max + 1, 4)
    r2s = range(2, entry_max + 1, 4)
    r3s = range(1, entry_max + 1, 4)
    for r1, r2, r3, r4 in itertools.product(r1s, r2s, r3s, r3s):
        case = neighborhoods.IIBCase(r1, r2, r3, r4)
        cases += 1
        if neighborhoods.cf_intersection(case) > 1:
            failures.append(f"{(r1, r2, r3, r4)}: fiber degree above 1")
    return _result("en-iib-fiber-degree", start, cases, failures)


def _ceil_div(p: int, q: int) -> int:
    return -(-p // q)


def random_case_a(rng: random.Random, a: int, d: int) -> chains.O3CaseA:
    supp_a = {(2 * d, 0)}
    for _ in range(rng.randint(0, 4)):
        i = rng.randint(0, 3 * d + 2)
        j = max(0, 2 * a * d - a * i) + rng.randint(0, 6)
        supp_a.add((i, j))
    supp_b = set()
    for _ in range(rng.randint(0, 4)):
        i = rng.randint(0, 2 * d + 2)
        j = max(0, _ceil_div(2 * a * d - 1 - (2 * i + 1) * a, 2)) + rng.randint(0, 6)
        supp_b.add((i, j))
    alpha = d + 1 + rng.randint(0, 3)
    return chains.O3CaseA(
        a=a, d=d, alpha=alpha,
        supp_a=frozenset(supp_a), supp_b=frozenset(supp_b),
    )


def random_case_b(rng: random.Random, a: int, d: int) -> chains.O3CaseB:
    supp_a = set()
    for _ in range(rng.randint(0, 4)):
        i = rng.randint(0, 2 * d + 3)
        j = max(0, (2 * d + 1) * a - a * i) + rng.randint(0, 6)
        supp_a.add((i, j))
    supp_b = set()
    for _ in range(rng.randint(0, 4)):
        i = rng.randint(0, d + 2)
        j = max(0, a * (d - i) - 1) + rng.randint(0, 6)
        supp_b.add((i, j))
    return chains.O3CaseB(
        a=a, d=d, supp_a=frozenset(supp_a), supp_b=frozenset(supp_b)
    )


def _check_case_a(case: chains.O3CaseA, rng: random.Random, failures: list) -> None:
    a, d, alpha, r = case.a, case.d, case.alpha, case.r
    tag = f"A(a={a}, d={d})"
    chains.nonnegativity_check(case)
    stages = chains.chain_simulate(case)
    for st in stages[:-1]:
        if st.sigma_weight != 2 * d:
            failures.append(f"{tag}: stage {st.k} weight {st.sigma_weight}")
            return
        if st.discrepancy != Fraction(1, 2):
            failures.append(f"{tag}: stage {st.k} discrepancy {st.discrepancy}")
            return
        if not st.witnesses:
            failures.append(f"{tag}: stage {st.k} lost its weight witnesses")
            return
    for k in range(a):
        for i, j in case.supp_a:
            if chains.beta_k(i, j, k + 1, d) - chains.beta_k(i, j, k, d) != i - 2 * d:
                failures.append(f"{tag}: beta recurrence broke")
                return
        for i, j in case.supp_b:
            want = i + 1 - d if k % 2 == 0 else i - d
            if chains.gamma_k(i, j, k + 1, d) - chains.gamma_k(i, j, k, d) != want:
                failures.append(f"{tag}: gamma recurrence broke")
                return
        want = alpha - 1 - d if k % 2 == 0 else alpha - d
        if chains.delta_k(k + 1, alpha, d) - chains.delta_k(k, alpha, d) != want:
            failures.append(f"{tag}: delta recurrence broke")
            return
    if chains.delta_k(a, alpha, d) != Fraction(2 * a * alpha - a - r - 2, 2):
        failures.append(f"{tag}: closed form for delta(a) broke")
        return
    top = stages[-1]
    for (i, j), e in top.a_exponents:
        if e != a * i + j - r - 1:
            failures.append(f"{tag}: top-stage beta {e} != {a * i + j - r - 1}")
            return
    for (i, j), e in top.b_exponents:
        if 2 * e != (2 * i + 1) * a + 2 * j - r:
            failures.append(f"{tag}: top-stage gamma mismatch")
            return
    ident = chains.depth_identity(case, rng.randint(0, 12))
    if not ident.check or ident.dep_y != ident.dep_x_upper + a - 2:
        failures.append(f"{tag}: depth identity broke")


def _check_case_b(case: chains.O3CaseB, rng: random.Random, failures: list) -> None:
    a, d, r = case.a, case.d, case.r
    tag = f"B(a={a}, d={d})"
    chains.nonnegativity_check(case)
    stages = chains.chain_stages_b(case)
    for st in stages[:-1]:
        if st.wt_first != 2 * d + 1 or st.wt_second != Fraction(2 * d + 1, 2):
            failures.append(f"{tag}: stage {st.k} weights broke")
            return
        if st.discrepancy != Fraction(1, 2):
            failures.append(f"{tag}: stage {st.k} discrepancy {st.discrepancy}")
            return
    for k in range(a):
        for i, j in case.supp_a:
            if (chains.beta_k_b(i, j, k + 1, d)
                    - chains.beta_k_b(i, j, k, d)) != i - 2 * d - 1:
                failures.append(f"{tag}: first recurrence broke")
                return
        for i, j in case.supp_b:
            if (chains.gamma_k_b(i, j, k + 1, d)
                    - chains.gamma_k_b(i, j, k, d)) != i - d:
                failures.append(f"{tag}: second recurrence broke")
                return
    top = stages[-1]
    for (i, j), e in top.p_exponents:
        if e != a * i + j - r - 2:
            failures.append(f"{tag}: top-stage first exponent mismatch")
            return
    for (i, j), e in top.q_exponents:
        if e != j + 1 + a * (i - d):
            failures.append(f"{tag}: top-stage second exponent mismatch")
            return
    ident = chains.depth_identity(case, rng.randint(0, 12))
    if not ident.check or ident.dep_y != ident.dep_x_upper + a - 2:
        failures.append(f"{tag}: depth identity broke")


def sweep_o3_chains(cases_per_shape: int = 200, seed: int = 20240817) -> SweepResult:
    """Randomized chain data for both shapes: recurrences, nonnegativity,
    stage weights, top-stage exponents, and the depth identity."""
    start = time.perf_counter()
    rng = random.Random(seed)
    failures = []
    cases = 0
    combos = [(a, d) for a in (3, 5, 7, 9) for d in (1, 2, 3)]
    per_combo = _ceil_div(cases_per_shape, len(combos))
    for a, d in combos:
        for _ in range(per_combo):
            _check_case_a(random_case_a(rng, a, d), rng, failures)
            cases += 1
            _check_case_b(random_case_b(rng, a, d), rng, failures)
            cases += 1
            if failures:
                return _result("o3-chain-calculus", start, cases, failures)
    return _result("o3-chain-calculus", start, cases, failures)


_T = traces


def random_trace(rng: random.Random, max_len: int = 12, max_dep: int = 10):
    dep = rng.randint(0, max_dep)
    steps = []
    for _ in range(rng.randint(1, max_len)):
        kinds = [_T.FLOP, _T.DIV_TO_POINT, _T.DIV_TO_CURVE]
        if dep == 0:
            kinds.append(_T.BLOWDOWN_LCI)
        else:
            kinds += [_T.FLIP, _T.WEXTRACTION]
        kind = rng.choice(kinds)
        if kind == _T.FLOP:
            after = dep
        elif kind == _T.FLIP:
            after = rng.randint(0, dep - 1)
        elif kind == _T.WEXTRACTION:
            after = rng.randint(dep - 1, dep + 2)
        elif kind == _T.DIV_TO_POINT:
            after = rng.randint(max(0, dep - 1), dep + 2)
        elif kind == _T.DIV_TO_CURVE:
            after = rng.randint(0, dep)
        else:  # BLOWDOWN_LCI keeps the Gorenstein terminus
            after = 0
        steps.append(_T.TraceStep(kind, dep, after))
        dep = after
    return _T.FactorizationTrace(tuple(steps))


def violating_extensions(trace) -> list:
    """Single-step mutations that must each be rejected."""
    dep = trace.steps[-1].dep_after if trace.steps else 0
    out = [
        trace.steps + (_T.TraceStep(_T.FLOP, dep, dep + 1),),
        trace.steps + (_T.TraceStep(_T.FLIP, dep, dep),),
        trace.steps + (_T.TraceStep(_T.DIV_TO_CURVE, dep, dep + 1),),
    ]
    if trace.steps:
        # chaining break: step starts at the wrong depth
        out.append(trace.steps + (_T.TraceStep(_T.FLOP, dep + 1, dep + 1),))
    if dep == 0:
        out.append(trace.steps + (_T.TraceStep(_T.WEXTRACTION, 0, 3),))
    if dep >= 2:
        out.append(trace.steps + (_T.TraceStep(_T.WEXTRACTION, dep, dep - 2),))
        out.append(trace.steps + (_T.TraceStep(_T.DIV_TO_POINT, dep, dep - 2),))
    if dep >= 1:
        out.append(trace.steps + (_T.TraceStep(_T.BLOWDOWN_LCI, dep, 0),))
    return [_T.FactorizationTrace(s) for s in out]


def sweep_trace_rules(n_traces: int = 10000, seed: int = 20240818) -> SweepResult:
    """Metamorphic check: generated traces pass, every mutation fails."""
    start = time.perf_counter()
    rng = random.Random(seed)
    failures = []
    cases = 0
    for _ in range(n_traces):
        t = random_trace(rng)
        cases += 1
        if not traces.validate_trace(t).valid:
            failures.append(f"generated trace rejected: {t.steps[:3]}...")
            break
        for bad in violating_extensions(t):
            if traces.validate_trace(bad).valid:
                failures.append(f"mutant accepted: {bad.steps[-1]}")
                break
        if failures:
            break
    return _result("trace-rule-metamorphic", start, cases, failures)


def run_all(
    cyclic_max: int = 25,
    germ_r_max: int = 7,
    rr_max: int = 40,
    en_r_max: int = 99,
    semi_max: int = 30,
    iib_max: int = 51,
    o3_cases: int = 200,
    trace_count: int = 10000,
    seed: int = 20240817,
) -> list[SweepResult]:
    return [
        sweep_cyclic_depth(cyclic_max),
        sweep_germ_depth(germ_r_max),
        sweep_residual_recursion(germ_r_max),
        sweep_rr_bounds(rr_max),
        check_e11(),
        sweep_en_exceptional(en_r_max),
        sweep_en_semistable(semi_max),
        sweep_en_iib(iib_max),
        sweep_o3_chains(o3_cases, seed),
        sweep_trace_rules(trace_count, seed + 1),
    ]
