"""Intersection numbers on extremal neighborhoods.

For an extremal curve germ C in X the canonical degree decomposes as

    K_X . C = -1 + sum_P w_P(0),    0 <= w_P(0) <= (r_P - 1) / r_P,

one term per singular point on C.  After the depth-one extraction
Y -> X at a distinguished point P of index r, the proper transform C_Y
picks up the correction

    K_Y . C_Y = K_X . C + (C_Y . F) / r,

where F is the fiber of the extraction over P and C_Y . F depends only
on the case shape.  For a cA-type point of type (r; a1, a2) the fiber
degree is a1 / r1 where r1 > 0 satisfies r1 = a1 * a2^(-1) mod r; any
positive member of the congruence class is treated as admissible, with
the minimal one as default.

Case shapes handled (the first two need the caller to supply K_X . C,
since w_P(0) comes from an external classification):

    IC                one point, index r odd >= 5, C_Y . F = 1
    IIB               cAx/4 point, C_Y . F = min(3/r1, 2/r2)
    IA                generic (r; a1, a2) point
    ExceptionalIAIA   (r; 1, a2) plus an index-2 point, a2 > r/2
    SemistableIAIA    (r; 1, a) plus (r'; 1, a'), delta = ar' + a'r - rr' > 0
    IAIAIII           same numbers as ExceptionalIAIA, with a type III
                      companion point

No attempt is made to verify that a case shape is geometrically
realizable; only the stated congruences and bounds are enforced.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import CaseViolation, InvalidCaseData


@dataclass(frozen=True)
class ENPoint:
    """A singular point on the extremal curve: index r and its w_P(0)."""

    r: int
    w0: Fraction = Fraction(0)

    def __post_init__(self):
        if self.r < 1:
            raise InvalidCaseData("point index must be >= 1")
        w0 = Fraction(self.w0)
        if not (0 <= w0 <= Fraction(self.r - 1, self.r)):
            raise InvalidCaseData(
                f"w_P(0) = {w0} outside [0, (r-1)/r] for r = {self.r}"
            )
        object.__setattr__(self, "w0", w0)


def canonical_degree(points) -> Fraction:
    """K_X . C = -1 + sum of w_P(0); flipping germs give a negative value."""
    return Fraction(-1) + sum((Fraction(p.w0) for p in points), Fraction(0))


@dataclass(frozen=True)
class ICCase:
    r: int

    def __post_init__(self):
        if self.r < 5 or self.r % 2 == 0:
            raise InvalidCaseData("IC needs odd r >= 5")


@dataclass(frozen=True)
class IIBCase:
    r1: int
    r2: int
    r3: int
    r4: int

    def __post_init__(self):
        residues = (3, 2, 1, 1)
        values = (self.r1, self.r2, self.r3, self.r4)
        for v, m in zip(values, residues):
            if v < 1 or v % 4 != m:
                raise InvalidCaseData(
                    f"IIB weights must be = (3, 2, 1, 1) mod 4, got {values}"
                )


@dataclass(frozen=True)
class IACase:
    """Ordinary point of type (r; a1, a2)."""

    r: int
    a1: int
    a2: int

    def __post_init__(self):
        if self.r < 2:
            raise InvalidCaseData("IA needs r >= 2")
        for a in (self.a1, self.a2):
            if not (0 < a < self.r) or gcd(a, self.r) != 1:
                raise InvalidCaseData(
                    f"IA orbifold weights must be units mod r, got {a}"
                )


@dataclass(frozen=True)
class ExceptionalIAIACase:
    """(r; 1, a2) with a2 > r/2 plus the index-2 companion point."""

    r: int
    a2: int

    def __post_init__(self):
        if self.r < 3 or self.r % 2 == 0:
            raise InvalidCaseData("exceptional IA+IA needs odd r >= 3")
        if not (2 * self.a2 > self.r and self.a2 < self.r):
            raise InvalidCaseData("need r/2 < a2 < r")
        if gcd(self.a2, self.r) != 1:
            raise InvalidCaseData("a2 must be a unit mod r")


@dataclass(frozen=True)
class SemistableIAIACase:
    """Points (r; 1, a) and (r'; 1, a') with delta = ar' + a'r - rr' > 0."""

    r: int
    a: int
    rprime: int
    aprime: int

    def __post_init__(self):
        if not (self.r >= self.rprime >= 2):
            raise InvalidCaseData("need r >= r' >= 2")
        if not (0 < self.a < self.r) or gcd(self.a, self.r) != 1:
            raise InvalidCaseData("a must be a unit mod r")
        if not (0 < self.aprime < self.rprime) or gcd(self.aprime, self.rprime) != 1:
            raise InvalidCaseData("a' must be a unit mod r'")
        if self.delta <= 0:
            raise InvalidCaseData("semistable shape needs ar' + a'r - rr' > 0")

    @property
    def delta(self) -> int:
        return self.a * self.rprime + self.aprime * self.r - self.r * self.rprime


@dataclass(frozen=True)
class IAIAIIICase:
    """Same numerics as ExceptionalIAIA, with a type III companion."""

    r: int
    a2: int

    def __post_init__(self):
        if self.r < 3:
            raise InvalidCaseData("IA+IA+III needs r >= 3")
        if not (2 * self.a2 > self.r and self.a2 < self.r):
            raise InvalidCaseData("need r/2 < a2 < r")
        if gcd(self.a2, self.r) != 1:
            raise InvalidCaseData("a2 must be a unit mod r")


ENCase = ICCase | IIBCase | IACase | ExceptionalIAIACase | SemistableIAIACase | IAIAIIICase


def _minimal_residue(value: int, r: int) -> int:
    res = value % r
    return res if res else r


def minimal_r1(case) -> int:
    """Least positive r1 in the admissible congruence class of the case."""
    if isinstance(case, IACase):
        return _minimal_residue(case.a1 * pow(case.a2, -1, case.r), case.r)
    if isinstance(case, (ExceptionalIAIACase, IAIAIIICase)):
        return _minimal_residue(pow(case.a2, -1, case.r), case.r)
    if isinstance(case, SemistableIAIACase):
        return _minimal_residue(pow(case.a, -1, case.r), case.r)
    raise InvalidCaseData(f"{type(case).__name__} has no r1 congruence")


def _resolve_r1(case, r1: int | None) -> int:
    least = minimal_r1(case)
    if r1 is None:
        return least
    if r1 < 1 or r1 % case.r != least % case.r:
        raise InvalidCaseData(
            f"r1 = {r1} is not a positive member of the class {least} mod {case.r}"
        )
    return r1


def cf_intersection(case, r1: int | None = None) -> Fraction:
    """Fiber degree C_Y . F of the depth-one extraction for the case."""
    if isinstance(case, ICCase):
        return Fraction(1)
    if isinstance(case, IIBCase):
        if r1 is not None:
            raise InvalidCaseData("IIB fixes its weights; r1 is not free")
        return min(Fraction(3, case.r1), Fraction(2, case.r2))
    if isinstance(case, IACase):
        return Fraction(case.a1, _resolve_r1(case, r1))
    if isinstance(case, (ExceptionalIAIACase, IAIAIIICase, SemistableIAIACase)):
        return Fraction(1, _resolve_r1(case, r1))
    raise InvalidCaseData(f"no fiber degree rule for {type(case).__name__}")


@dataclass(frozen=True)
class KeyVerdict:
    """Post-extraction degree K_Y . C_Y with its ingredients."""

    ky_cy: Fraction
    nonpositive: bool
    kx_c: Fraction
    cf: Fraction
    r1: int | None = None
    s: int | None = None
    delta: int | None = None


def _verdict(ky, kx, cf, r1=None, s=None, delta=None) -> KeyVerdict:
    return KeyVerdict(
        ky_cy=ky, nonpositive=(ky <= 0), kx_c=kx, cf=cf, r1=r1, s=s, delta=delta
    )


def _witness_product(s: int, r1: int) -> None:
    # s r1 = 2 mod r and s r1 > 0 force s r1 >= 2; anything less is
    # inconsistent case data
    if s * r1 < 2:
        raise CaseViolation(f"witness product s*r1 = {s * r1} < 2")


def key_check(case, kx=None, r1: int | None = None) -> KeyVerdict:
    """Evaluate K_Y . C_Y = K_X . C + (C_Y . F) / r and its sign.

    The compound IA cases compute K_X . C internally and check their
    witness inequalities (CaseViolation on failure).  IC, IIB and plain
    IA take kx from the caller, validated against the w_P(0) bounds.
    """
    if isinstance(case, ICCase):
        kx = _require_kx(case, kx, Fraction(-1), Fraction(-1, case.r))
        cf = cf_intersection(case)
        return _verdict(kx + cf / case.r, kx, cf)
    if isinstance(case, IIBCase):
        kx = _require_kx(case, kx, Fraction(-1), Fraction(-1, 4))
        cf = cf_intersection(case)
        return _verdict(kx + cf / 4, kx, cf)
    if isinstance(case, IACase):
        if kx is None:
            raise InvalidCaseData("IA needs the caller's K_X . C")
        kx = Fraction(kx)
        if kx > 0:
            raise InvalidCaseData("extremal germs need K_X . C <= 0")
        use = _resolve_r1(case, r1)
        cf = Fraction(case.a1, use)
        return _verdict(kx + cf / case.r, kx, cf, r1=use)
    if isinstance(case, (ExceptionalIAIACase, IAIAIIICase)):
        if kx is not None:
            raise InvalidCaseData("this case computes K_X . C itself")
        s = 2 * case.a2 - case.r
        use = _resolve_r1(case, r1)
        _witness_product(s, use)
        kx_c = Fraction(-s, 2 * case.r)
        cf = Fraction(1, use)
        ky = kx_c + cf / case.r
        return _verdict(ky, kx_c, cf, r1=use, s=s)
    if isinstance(case, SemistableIAIACase):
        if kx is not None:
            raise InvalidCaseData("this case computes K_X . C itself")
        d = case.delta
        use = _resolve_r1(case, r1)
        gamma = (case.a * use - 1) // case.r
        if gamma == 0:
            raise CaseViolation("gamma = 0: extraction data inconsistent")
        if (use * d - case.rprime) % case.r != 0:
            raise CaseViolation("r1 delta is not r' mod r")
        if use * d < case.rprime:
            raise CaseViolation(
                f"witness r1*delta = {use * d} < r' = {case.rprime}"
            )
        kx_c = Fraction(-d, case.r * case.rprime)
        cf = Fraction(1, use)
        ky = kx_c + cf / case.r
        return _verdict(ky, kx_c, cf, r1=use, delta=d)
    raise InvalidCaseData(f"no key rule for {type(case).__name__}")


def _require_kx(case, kx, lo: Fraction, hi: Fraction) -> Fraction:
    if kx is None:
        raise InvalidCaseData(
            f"{type(case).__name__} needs the caller's K_X . C"
        )
    kx = Fraction(kx)
    if not (lo <= kx <= hi):
        raise InvalidCaseData(f"K_X . C = {kx} outside [{lo}, {hi}]")
    return kx
