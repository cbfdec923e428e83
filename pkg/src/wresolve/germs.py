"""cA/r germ calculus: weighted-blow-up transforms and the depth invariant.

A cA/r germ is a hypersurface quotient xy + g(z^r, u) = 0 under the
1/r(beta, -beta, 1, r) action, gcd(beta, r) = 1.  Only the monomial
support of g matters here: a support element (i, j) stands for the
monomial z^(r i) u^j, coefficients are taken generic, and cancellation
between terms is out of scope.  The three core numbers are

    axial weight   lam       = min { j : (0, j) in support }
    slope minima   nu_s      = min { s i + j : (i, j) in support }
    stabilizer     t         = min { s >= 1 : nu_s = lam }

and the minimal number of depth-one extractions needed to reach a
Gorenstein model is exactly lam * r - t.  The exhaustive search
``depth_search`` recovers the same number without using that formula, by
walking every admissible weighted blow-up; it exists so the closed form
can be checked against an independent route.

A blow-up with weights 1/r(r1, r2, 1, r), r1 + r2 = r nu_1, leaves two
cyclic quotient points of indices r1 and r2 (type 1/ri(r, -r, -1), stored
axis-last) and, when nu_1 < lam, a residual germ with the same r and beta
and support { (i, i + j - nu_1) }.  Splits are assumed to satisfy
r1 = beta, r2 = -beta mod r.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .baskets import (
    CA_R,
    CAX2,
    CAX4,
    CD2,
    CD3,
    CE2,
    CYCLIC,
    GORENSTEIN,
    CyclicQuotient,
    TerminalClass,
)
from .errors import InvalidParameter, InvalidSplit, SearchLimitExceeded


@dataclass(frozen=True)
class CARGerm:
    """Monomial data of a cA/r germ: index r, axis weight beta, support."""

    r: int
    beta: int
    support: frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("germ index must be >= 1")
        beta = int(self.beta) % self.r
        if gcd(beta, self.r) != 1:
            raise ValueError(f"beta = {self.beta} not coprime to r = {self.r}")
        object.__setattr__(self, "beta", beta)
        support = frozenset((int(i), int(j)) for i, j in self.support)
        if not support:
            raise ValueError("support must be nonempty")
        if any(i < 0 or j < 0 for i, j in support):
            raise ValueError("support exponents must be nonnegative")
        if (0, 0) in support:
            raise ValueError("constant term: germ not singular at the origin")
        if not any(i == 0 for i, _ in support):
            raise ValueError("no axial monomial: axial weight would be infinite")
        object.__setattr__(self, "support", support)


def axial_weight(g: CARGerm) -> int:
    """lam = least u-exponent on the axis; equals aw of the germ."""
    return min(j for i, j in g.support if i == 0)


def nu(g: CARGerm, s: int) -> int:
    """Weighted support minimum nu_s = min s*i + j."""
    if s < 1:
        raise ValueError("slope must be >= 1")
    return min(s * i + j for i, j in g.support)


def tvalue(g: CARGerm) -> int:
    """Least s with nu_s = lam; always 1 <= t <= lam."""
    lam = axial_weight(g)
    for s in range(1, lam + 1):
        if nu(g, s) == lam:
            return s
    # nu_lam = lam always (the axial monomial dominates), so unreachable
    raise AssertionError("nu_s never met the axial weight")


def depth_formula(g: CARGerm) -> int:
    """Depth lam*r - t; a Gorenstein germ (r = 1) has depth 0."""
    if g.r == 1:
        return 0
    return axial_weight(g) * g.r - tvalue(g)


@dataclass(frozen=True)
class BlowupResult:
    """Outcome of one depth-one blow-up of a cA/r germ.

    Two cyclic quotient points of indices r1, r2 (r1 + r2 = r nu_1; index
    1 entries are smooth) and the residual germ, present iff nu_1 < lam.
    """

    cyclic_points: tuple[CyclicQuotient, CyclicQuotient]
    residual: CARGerm | None


def _quotient_point(index: int, r: int) -> CyclicQuotient:
    # type 1/index(r, -r, -1), folding pair first, axis last
    return CyclicQuotient(index, (r, -r, -1))


def admissible_splits(g: CARGerm) -> tuple[tuple[int, int], ...]:
    """All (r1, r2) with r1 + r2 = r nu_1 and r1 = beta mod r.

    There are exactly nu_1 of them; a Gorenstein germ has none.
    """
    if g.r == 1:
        return ()
    total = g.r * nu(g, 1)
    return tuple((r1, total - r1) for r1 in range(g.beta, total, g.r))


def blowup_step(g: CARGerm, r1: int, r2: int) -> BlowupResult:
    """Apply the weighted blow-up 1/r(r1, r2, 1, r) to the germ."""
    if g.r == 1:
        raise InvalidSplit("Gorenstein germ admits no depth-one blow-up")
    n1 = nu(g, 1)
    if r1 < 1 or r2 < 1:
        raise InvalidSplit(f"split ({r1}, {r2}) must be positive")
    if r1 + r2 != g.r * n1:
        raise InvalidSplit(
            f"split ({r1}, {r2}) does not sum to r*nu_1 = {g.r * n1}"
        )
    if r1 % g.r != g.beta or r2 % g.r != (-g.beta) % g.r:
        raise InvalidSplit(
            f"split ({r1}, {r2}) breaks the congruence r1 = {g.beta} mod {g.r}"
        )
    points = (_quotient_point(r1, g.r), _quotient_point(r2, g.r))
    lam = axial_weight(g)
    residual = None
    if n1 < lam:
        residual = CARGerm(
            g.r, g.beta, frozenset((i, i + j - n1) for i, j in g.support)
        )
    return BlowupResult(cyclic_points=points, residual=residual)


@lru_cache(maxsize=None)
def cyclic_depth_search(r: int) -> int:
    """Minimal extraction count for a cyclic point, by exhaustive splits.

    Every depth-one extraction over an index-r point splits it into
    indices a and r - a; this searches all of them (a superset of the
    geometrically realized ones, which is harmless because every branch
    bottoms out at the same total, r - 1).
    """
    if r < 1:
        raise ValueError("index must be >= 1")
    if r == 1:
        return 0
    return min(
        1 + cyclic_depth_search(a) + cyclic_depth_search(r - a)
        for a in range(1, r // 2 + 1)
    )


def depth_search(g: CARGerm, limit: int | None = None) -> int:
    """Depth by exhaustive search over all admissible blow-up sequences.

    Independent of depth_formula: minimizes total extraction count over
    every split at every stage.  limit caps the step count of any single
    resolution path (default lam * r, which no path can legally reach
    since the depth is lam * r - t); exceeding it raises
    SearchLimitExceeded.
    """
    if g.r == 1:
        return 0
    if limit is None:
        limit = axial_weight(g) * g.r
    dep, _ = _search(g, limit)
    return dep


def resolution_tree(g: CARGerm, limit: int | None = None) -> dict:
    """Depth search that also reports one optimal resolution tree."""
    if g.r == 1:
        return {"kind": "germ", "index": 1, "dep": 0, "split": None,
                "quotients": [], "residual": None}
    if limit is None:
        limit = axial_weight(g) * g.r
    _, tree = _search(g, limit)
    return tree


def _search(g: CARGerm, budget: int) -> tuple[int, dict]:
    lam = axial_weight(g)
    splits = admissible_splits(g)
    best = None
    best_tree = None
    for r1, r2 in splits:
        used = 1 + cyclic_depth_search(r1) + cyclic_depth_search(r2)
        if used > budget:
            raise SearchLimitExceeded(
                f"path cost {used} exceeds the ceiling {budget}"
            )
        step = blowup_step(g, r1, r2)
        if step.residual is None:
            total, sub = used, None
        else:
            rest, sub = _search(step.residual, budget - used)
            total = used + rest
        if best is None or total < best:
            best = total
            best_tree = {
                "kind": "germ",
                "index": g.r,
                "axial_weight": lam,
                "nu1": nu(g, 1),
                "dep": total,
                "split": [r1, r2],
                "splits_considered": len(splits),
                "quotients": [
                    {"index": r1, "dep": cyclic_depth_search(r1)},
                    {"index": r2, "dep": cyclic_depth_search(r2)},
                ],
                "residual": sub,
            }
    assert best is not None  # splits is nonempty whenever r >= 2
    return best, best_tree


@dataclass(frozen=True)
class DepthBound:
    """Depth estimate: hard upper bound, optional lower bound, exactness."""

    upper: int
    lower: int | None = None
    exact: bool = False

    def __post_init__(self):
        if self.upper < 0 or (self.lower is not None and self.lower < 0):
            raise ValueError("depth bounds must be >= 0")
        if self.lower is not None and self.lower > self.upper:
            raise ValueError("lower bound exceeds upper bound")
        if self.exact and self.lower != self.upper:
            raise ValueError("exact bound needs lower = upper")

    @classmethod
    def exactly(cls, value: int) -> "DepthBound":
        return cls(upper=value, lower=value, exact=True)


def depth_bound(tc: TerminalClass) -> DepthBound:
    """Depth of a terminal point, exact where a formula exists.

    Gorenstein points have depth 0, index-r cyclic points r - 1, cA/r
    germs lam*r - t.  The non-cA classes only get upper bounds, read off
    the vertex count of the minimal resolution of the general elephant:
    2k+1 for cAx/4, k+2 for cAx/2 (needs the optional parameter k), 2k
    for cD/2, 6 for cD/3 and 7 for cE/2.
    """
    if tc.kind == GORENSTEIN:
        return DepthBound.exactly(0)
    if tc.kind == CYCLIC:
        r = tc.quotient.r
        return DepthBound.exactly(0 if r == 1 else r - 1)
    if tc.kind == CA_R:
        return DepthBound.exactly(depth_formula(tc.germ))
    if tc.kind == CAX4:
        return DepthBound(upper=2 * tc.k + 1)
    if tc.kind == CAX2:
        if tc.k is None:
            raise InvalidParameter("cAx/2 depth bound needs the parameter k")
        return DepthBound(upper=tc.k + 2)
    if tc.kind == CD2:
        return DepthBound(upper=2 * tc.k)
    if tc.kind == CD3:
        return DepthBound(upper=6)
    if tc.kind == CE2:
        return DepthBound(upper=7)
    raise InvalidParameter(f"no depth rule for {tc.kind!r}")
