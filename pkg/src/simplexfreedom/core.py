"""Interval probability assignments: validation, tightening, classification.

An assignment gives every option i a necessity lower bound ne_i and a
possibility upper bound po_i on its (unknown) probability p_i.  The feasible
region is the part of the probability simplex compatible with all bounds:

    {p : p_i >= 0, sum(p) = 1, ne_i <= p_i <= po_i for all i}

which is nonempty exactly when ne_i <= po_i everywhere, sum(ne) <= 1 and
sum(po) >= 1.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import ValidationError, Violation

# Absolute tolerance for invariant comparisons.  Inputs are human-entered
# decimals, not computed quantities; 1e-9 absorbs their rounding.
TOLERANCE = 1e-9


class AssignmentClass(enum.Enum):
    """Coarse classification of an assignment, judged on its tightened form."""

    VACUOUS = "vacuous"  # all po = 1, ne = 0: total ignorance
    POINT = "point"      # all po = ne: a single probability vector
    PARTIAL = "partial"


@dataclass(frozen=True)
class IntervalAssignment:
    """Immutable necessity/possibility bounds over a set of named options.

    Construction checks only per-option structure (matching lengths, values
    in [0,1], ne_i <= po_i); values within TOLERANCE of those constraints are
    snapped onto them.  Use :func:`validate` for the full feasibility contract
    (at least two options, sum(ne) <= 1 <= sum(po)).  The relaxed constructor
    exists so that conditional sub-assignments (mass below 1) and degenerate
    cross-table margins remain representable.
    """

    options: tuple[str, ...]
    ne: tuple[float, ...]
    po: tuple[float, ...]

    def __post_init__(self) -> None:
        options = tuple(str(x) for x in self.options)
        ne = [float(x) for x in self.ne]
        po = [float(x) for x in self.po]
        violations = _structural_violations(ne, po, len(options))
        if violations:
            raise ValidationError(violations)
        for i in range(len(ne)):
            ne[i] = min(max(ne[i], 0.0), 1.0)
            po[i] = min(max(po[i], 0.0), 1.0)
            if ne[i] > po[i]:  # within tolerance by the checks above
                ne[i] = po[i]
        object.__setattr__(self, "options", options)
        object.__setattr__(self, "ne", tuple(ne))
        object.__setattr__(self, "po", tuple(po))

    @property
    def m(self) -> int:
        """Number of options."""
        return len(self.options)

    @property
    def widths(self) -> tuple[float, ...]:
        return tuple(p - n for n, p in zip(self.ne, self.po))


def _structural_violations(
    ne: list[float], po: list[float], n_labels: int
) -> list[Violation]:
    out: list[Violation] = []
    if not (len(ne) == len(po) == n_labels):
        out.append(
            Violation(
                "LengthMismatch",
                f"got {n_labels} labels, {len(ne)} ne values, {len(po)} po values",
            )
        )
        return out
    if len(ne) < 1:
        out.append(Violation("TooFewOptions", "at least one option required"))
        return out
    for i, (lo, hi) in enumerate(zip(ne, po)):
        for name, v in (("ne", lo), ("po", hi)):
            if not math.isfinite(v) or v < -TOLERANCE or v > 1.0 + TOLERANCE:
                out.append(
                    Violation("RangeError", f"{name}[{i}] = {v!r} outside [0, 1]", i)
                )
        if math.isfinite(lo) and math.isfinite(hi) and lo > hi + TOLERANCE:
            out.append(
                Violation("BoundOrder", f"ne[{i}] = {lo!r} exceeds po[{i}] = {hi!r}", i)
            )
    return out


def default_labels(m: int) -> tuple[str, ...]:
    return tuple(f"opt{i + 1}" for i in range(m))


def validate(
    raw_ne, raw_po, labels: list[str] | tuple[str, ...] | None = None
) -> IntervalAssignment:
    """Build a fully validated assignment or raise naming every violation.

    Checks, all collected into one :class:`ValidationError`:

    * ``TooFewOptions`` -- fewer than two options,
    * ``RangeError``    -- any bound outside [0, 1],
    * ``BoundOrder``    -- ne_i > po_i,
    * ``Infeasible``    -- sum(ne) > 1 or sum(po) < 1 (empty region).

    Labels default to ``opt1..optM`` when absent.
    """
    ne = [float(x) for x in raw_ne]
    po = [float(x) for x in raw_po]
    if labels is None:
        labels = default_labels(len(ne))
    labels = tuple(str(s) for s in labels)

    violations = _structural_violations(ne, po, len(labels))
    if not any(v.code == "LengthMismatch" for v in violations):
        if len(ne) < 2:
            violations.append(
                Violation("TooFewOptions", f"need at least 2 options, got {len(ne)}")
            )
        finite = all(math.isfinite(v) for v in ne + po)
        if finite:
            s_ne = math.fsum(ne)
            s_po = math.fsum(po)
            if s_ne > 1.0 + TOLERANCE:
                violations.append(
                    Violation("Infeasible", f"sum(ne) = {s_ne:.12g} exceeds 1")
                )
            if s_po < 1.0 - TOLERANCE:
                violations.append(
                    Violation("Infeasible", f"sum(po) = {s_po:.12g} is below 1")
                )
    if violations:
        raise ValidationError(violations)
    return IntervalAssignment(labels, tuple(ne), tuple(po))


def tightened_bounds(a: IntervalAssignment) -> tuple[list[float], list[float]]:
    """Reachable bounds as plain vectors, without revalidation.

    po_i' = min(po_i, 1 - sum_{j!=i} ne_j), ne_i' = max(ne_i, 1 - sum_{j!=i} po_j).
    On a valid assignment these are the exact projections of the feasible
    region onto each coordinate; on an infeasible one they may cross
    (ne' > po'), which callers treat as an empty region.

    A change within TOLERANCE is discarded: the caps only restate simplex
    constraints already active in the region, so keeping the original bound
    leaves the region identical while already-tight decimal inputs come back
    bit-for-bit unchanged.
    """
    s_ne = math.fsum(a.ne)
    s_po = math.fsum(a.po)
    po2 = []
    ne2 = []
    for i in range(a.m):
        cap = 1.0 - (s_ne - a.ne[i])
        po2.append(cap if cap < a.po[i] - TOLERANCE else a.po[i])
        floor = 1.0 - (s_po - a.po[i])
        ne2.append(floor if floor > a.ne[i] + TOLERANCE else a.ne[i])
    return ne2, po2


def tighten(a: IntervalAssignment) -> IntervalAssignment:
    """Shrink bounds to their reachable form; the feasible region is unchanged.

    Every tightened bound is attained by some point of the region, so
    tightening is idempotent and never widens an interval.
    """
    ne2, po2 = tightened_bounds(a)
    return IntervalAssignment(a.options, tuple(ne2), tuple(po2))


def classify(a: IntervalAssignment) -> AssignmentClass:
    """Classify the tightened assignment as vacuous, point, or partial."""
    t = tighten(a)
    if all(n <= TOLERANCE and p >= 1.0 - TOLERANCE for n, p in zip(t.ne, t.po)):
        return AssignmentClass.VACUOUS
    if all(p - n <= TOLERANCE for n, p in zip(t.ne, t.po)):
        return AssignmentClass.POINT
    return AssignmentClass.PARTIAL
