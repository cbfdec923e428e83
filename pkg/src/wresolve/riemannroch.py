"""Singular Riemann-Roch bookkeeping for divisorial contractions to a point.

For a terminal threefold X the plurigenus formula carries a basket
correction sum n b (r - b) / (2 r).  Across a contraction f: Y -> X with
K_Y = f*K_X + (a/n) E the chi(2K) difference is therefore

    delta_chi = 1/2 (a/n)^3 E^3 + corr(Y) - corr(X),

and for discrepancy a/n in {1, 2} the difference is an integer >= 1.
That integrality threshold is taken here as an axiom.  Feeding in the
exceptional data of the classified contractions over a cD/2 point with
axial weight aw (so corr(X) = aw/4) turns the threshold into an upper
bound on aw.

Case data (r' >= 1, X of type cD/2):

    tag     a/n   E^3     basket of Y            dep(Y)
    E1_a4   2     1/r'    (r'-4, 2r')            2r' - 1
    E1_a2   1     2/r'    (r'-2, 2r')            2r' - 1
    E2      1     1/r'    2 x (r'-1, 2r')        4r'-2 .. 4r'-1
    E11     -     -       (1, 2) + (1, 6)        6

The exact threshold bound (largest aw with delta_chi >= 1) is sharper
than the classical sufficient bounds r' - 1 (E1) and 2r' - 1 (E2), which
only need delta_chi > 0; both are reported.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .baskets import Basket, CyclicQuotient, aw as basket_aw, normalize_cyclic
from .errors import InvalidParameter
from .germs import cyclic_depth_search

E1_A4 = "E1_a4"
E1_A2 = "E1_a2"
E2 = "E2"
E11 = "E11"
O3 = "O3"

TAGS = (E1_A4, E1_A2, E2, E11, O3)


@dataclass(frozen=True)
class ContractionCase:
    """One classified contraction case; r' parametrizes the E1/E2 families."""

    tag: str
    rprime: int | None = None

    def __post_init__(self):
        if self.tag not in TAGS:
            raise ValueError(f"unknown case tag {self.tag!r}")
        if self.tag in (E1_A4, E1_A2, E2):
            if self.rprime is None or self.rprime < 1:
                raise ValueError(f"{self.tag} needs a positive r'")
        elif self.rprime is not None:
            raise ValueError(f"{self.tag} takes no r'")


def rr_correction(basket: Basket) -> Fraction:
    """Plurigenus correction sum n b (r - b) / (2 r) over the basket."""
    return sum(
        (Fraction(e.n * e.b * (e.r - e.b), 2 * e.r) for e in basket.entries),
        Fraction(0),
    )


def delta_chi(a_over_n, e3, basket_y: Basket, basket_x: Basket) -> Fraction:
    """chi(2K) jump 1/2 (a/n)^3 E^3 + corr(Y) - corr(X); needs E^3 > 0."""
    a_over_n = Fraction(a_over_n)
    e3 = Fraction(e3)
    if e3 <= 0:
        raise ValueError("E^3 must be positive")
    return (
        Fraction(1, 2) * a_over_n**3 * e3
        + rr_correction(basket_y)
        - rr_correction(basket_x)
    )


def cd2_basket(aw: int) -> Basket:
    """Basket of a cD/2 point of axial weight aw: aw copies of (1, 2)."""
    if aw < 1:
        raise InvalidParameter("axial weight must be >= 1")
    return Basket.of((1, 2, aw))


@dataclass(frozen=True)
class _CaseData:
    a_over_n: Fraction
    e3: Fraction
    basket_y: Basket
    sufficient_bound: int
    dep_y_min: int
    dep_y_max: int


def case_data(case: ContractionCase) -> _CaseData:
    """Exceptional data for the E1/E2 families; raises InvalidParameter
    when r' puts the Y-basket outside the terminal range."""
    rp = case.rprime
    try:
        if case.tag == E1_A4:
            if rp is None or rp <= 4:
                raise ValueError("E1_a4 needs r' > 4")
            return _CaseData(
                a_over_n=Fraction(2),
                e3=Fraction(1, rp),
                basket_y=Basket.of((rp - 4, 2 * rp)),
                sufficient_bound=rp - 1,
                dep_y_min=2 * rp - 1,
                dep_y_max=2 * rp - 1,
            )
        if case.tag == E1_A2:
            if rp is None or rp <= 2:
                raise ValueError("E1_a2 needs r' > 2")
            return _CaseData(
                a_over_n=Fraction(1),
                e3=Fraction(2, rp),
                basket_y=Basket.of((rp - 2, 2 * rp)),
                sufficient_bound=rp - 1,
                dep_y_min=2 * rp - 1,
                dep_y_max=2 * rp - 1,
            )
        if case.tag == E2:
            if rp is None or rp <= 1:
                raise ValueError("E2 needs r' > 1")
            return _CaseData(
                a_over_n=Fraction(1),
                e3=Fraction(1, rp),
                basket_y=Basket.of((rp - 1, 2 * rp, 2)),
                sufficient_bound=2 * rp - 1,
                dep_y_min=4 * rp - 2,
                dep_y_max=4 * rp - 1,
            )
    except ValueError as exc:
        raise InvalidParameter(str(exc)) from exc
    raise InvalidParameter(f"{case.tag} has no tabulated E1/E2 data")


def aw_upper_bound(case: ContractionCase) -> int:
    """Largest aw of the contracted cD/2 point allowed by delta_chi >= 1.

    delta_chi is linear in aw with slope -1/4 (corr of aw copies of
    (1, 2) is aw/4), so the bound is floor(4 (delta_chi(aw=0) - 1)),
    clamped at 0 when even aw = 1 fails the threshold.  Always at most
    the classical sufficient bound.
    """
    data = case_data(case)
    base = delta_chi(data.a_over_n, data.e3, data.basket_y, Basket())
    bound = (4 * (base - 1)).__floor__()
    return max(bound, 0)


@dataclass(frozen=True)
class CaseDepthReport:
    """Depth comparison across one contraction: dep(Y) vs dep(X) - 1."""

    tag: str
    aw: int | None
    dep_y_min: int
    dep_y_max: int
    dep_x_upper: int
    ok: bool


def case_depth_check(case: ContractionCase, aw: int | None = None) -> CaseDepthReport:
    """Check dep(Y) >= dep(X) - 1 with the tabulated case depths.

    E1/E2 need the axial weight aw of the contracted cD/2 point (within
    the classical sufficient bound); dep(X) <= 2 aw by the cD/2 depth
    bound.  E11 contracts over a cE/2 point: dep(Y) is recomputed from
    the basket indices 2 and 6 and dep(X) <= 7.
    """
    if case.tag == E11:
        points = (CyclicQuotient(2, (1, 1, 1)), CyclicQuotient(6, (1, -1, -1)))
        dep_y = 0
        for pt in points:
            _, idx = normalize_cyclic(pt)
            dep_y += cyclic_depth_search(idx)
        dep_x_upper = 7  # cE/2 upper bound
        return CaseDepthReport(
            tag=case.tag,
            aw=None,
            dep_y_min=dep_y,
            dep_y_max=dep_y,
            dep_x_upper=dep_x_upper,
            ok=dep_y >= dep_x_upper - 1,
        )
    if case.tag == O3:
        raise InvalidParameter("the O3 case is handled by the chain module")
    data = case_data(case)
    if aw is None or aw < 1:
        raise InvalidParameter(f"{case.tag} needs the axial weight aw >= 1")
    if aw > data.sufficient_bound:
        raise InvalidParameter(
            f"aw = {aw} exceeds the admissible bound {data.sufficient_bound}"
        )
    dep_x_upper = 2 * aw  # cD/2 depth bound, Xi = 2 aw
    return CaseDepthReport(
        tag=case.tag,
        aw=aw,
        dep_y_min=data.dep_y_min,
        dep_y_max=data.dep_y_max,
        dep_x_upper=dep_x_upper,
        ok=data.dep_y_min >= dep_x_upper - 1,
    )


def _check_aw_consistency(case: ContractionCase, awx: int) -> Fraction:
    """delta_chi for the case at axial weight awx (helper for sweeps)."""
    data = case_data(case)
    return delta_chi(data.a_over_n, data.e3, data.basket_y, cd2_basket(awx))
