"""Depth bookkeeping along a factorization into elementary birational steps.

A trace records, per step, the kind of operation and the total depth of
the ambient model before and after it.  The admissible kinds and their
depth rules:

    WExtraction   dep_before >= 1 and dep_after >= dep_before - 1
                  (equality flags extraction from a minimal resolution)
    Flip          dep_after < dep_before (strict drop; impossible at 0)
    Flop          dep_after = dep_before
    DivToPoint    dep_after >= dep_before - 1
    DivToCurve    dep_after <= dep_before
    BlowDownLCI   dep_before = 0 (smooth-curve blow-downs live in the
                  Gorenstein terminus)

plus the chaining condition that consecutive steps agree on the model
depth.  ``validate_trace`` reports one diagnostic per step;
``induction_certificate`` checks that the trace is usable as the
recursive step of a depth induction: every Flip or DivToCurve must act
strictly below the starting depth, and no Flip may act at depth 0.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import RuleViolation

WEXTRACTION = "WExtraction"
FLIP = "Flip"
FLOP = "Flop"
DIV_TO_POINT = "DivToPoint"
DIV_TO_CURVE = "DivToCurve"
BLOWDOWN_LCI = "BlowDownLCI"

KINDS = (WEXTRACTION, FLIP, FLOP, DIV_TO_POINT, DIV_TO_CURVE, BLOWDOWN_LCI)


@dataclass(frozen=True)
class TraceStep:
    """One step: operation kind and depth on either side."""

    kind: str
    dep_before: int
    dep_after: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown step kind {self.kind!r}")
        if self.dep_before < 0 or self.dep_after < 0:
            raise ValueError("depths must be >= 0")


@dataclass(frozen=True)
class FactorizationTrace:
    """A chain of steps; rule conformance is checked by validate_trace."""

    steps: tuple[TraceStep, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))


@dataclass(frozen=True)
class StepDiagnostic:
    index: int
    kind: str
    rule: str
    ok: bool
    note: str = ""


@dataclass(frozen=True)
class TraceVerdict:
    valid: bool
    diagnostics: tuple[StepDiagnostic, ...]

    def first_failure(self) -> StepDiagnostic | None:
        for d in self.diagnostics:
            if not d.ok:
                return d
        return None


def _step_rule(step: TraceStep) -> tuple[str, bool, str]:
    b, a = step.dep_before, step.dep_after
    if step.kind == WEXTRACTION:
        ok = b >= 1 and a >= b - 1
        note = "minimal-resolution extraction" if ok and a == b - 1 else ""
        return "dep_after >= dep_before - 1 >= 0", ok, note
    if step.kind == FLIP:
        return "dep_after < dep_before", a < b, ""
    if step.kind == FLOP:
        return "dep_after = dep_before", a == b, ""
    if step.kind == DIV_TO_POINT:
        return "dep_after >= dep_before - 1", a >= b - 1, ""
    if step.kind == DIV_TO_CURVE:
        return "dep_after <= dep_before", a <= b, ""
    if step.kind == BLOWDOWN_LCI:
        return "dep_before = 0", b == 0, ""
    raise AssertionError(step.kind)


def validate_trace(trace: FactorizationTrace, raise_on_violation: bool = False) -> TraceVerdict:
    """Check every step rule and the depth chaining between steps.

    Returns a verdict with one diagnostic per step (plus one per broken
    chain link); with raise_on_violation the first failure raises
    RuleViolation carrying the step index and rule name.
    """
    diags = []
    valid = True
    for idx, step in enumerate(trace.steps):
        if idx > 0 and trace.steps[idx - 1].dep_after != step.dep_before:
            diags.append(
                StepDiagnostic(
                    index=idx,
                    kind=step.kind,
                    rule="chaining",
                    ok=False,
                    note=(
                        f"dep_before = {step.dep_before} does not continue "
                        f"{trace.steps[idx - 1].dep_after}"
                    ),
                )
            )
            valid = False
            if raise_on_violation:
                raise RuleViolation(
                    f"step {idx} breaks the chaining rule", index=idx, rule="chaining"
                )
        rule, ok, note = _step_rule(step)
        diags.append(
            StepDiagnostic(index=idx, kind=step.kind, rule=rule, ok=ok, note=note)
        )
        if not ok:
            valid = False
            if raise_on_violation:
                raise RuleViolation(
                    f"step {idx} ({step.kind} {step.dep_before} -> "
                    f"{step.dep_after}) breaks: {rule}",
                    index=idx,
                    rule=rule,
                )
    return TraceVerdict(valid=valid, diagnostics=tuple(diags))


def induction_certificate(trace: FactorizationTrace) -> bool:
    """True when the trace can serve as the step of a depth induction.

    Requires a valid trace whose Flip and DivToCurve steps all start
    strictly below the trace's initial depth (they must land in models
    the induction hypothesis already covers), and no Flip at depth 0.
    The empty trace certifies trivially.
    """
    if not validate_trace(trace).valid:
        return False
    if not trace.steps:
        return True
    d0 = trace.steps[0].dep_before
    for step in trace.steps:
        if step.kind == FLIP and step.dep_before == 0:
            return False
        if step.kind in (FLIP, DIV_TO_CURVE) and step.dep_before >= d0:
            return False
    return True
