"""Closed-form nonspecificity measures on interval probability assignments.

The freedom measure is the fraction of the probability simplex compatible
with the bounds.  Writing W_T = sum_{i in T} po_i + sum_{j not in T} ne_j,
inclusion-exclusion over all subsets T of the M options gives

    F = sum_T (-1)^|T| * max(0, 1 - W_T)^(M-1)

which is 1 exactly for the vacuous assignment and 0 exactly when some
tightened interval collapses to a point.  The rival measures A (anxiety
ordering over sorted possibilities) and I (a Hartley-style bit count) use
only the possibility vector and are insensitive to distinctions F resolves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import TOLERANCE, IntervalAssignment, tightened_bounds
from .errors import CapExceeded, DomainError, ValidationError, Violation

# Hard cap on the option count for closed-form evaluation: 2^24 subsets keeps
# the worst case bounded at desk scale.  Pass force_cap=True to exceed it.
OPTION_CAP = 24

# Tightened intervals at least this narrow are treated as collapsed.  1e-12
# absorbs one-ulp noise from the tightening arithmetic while staying far
# below any humanly distinguishable width; the true volume of such a region
# is below 1e-12 in every case.
_WIDTH_FLOOR = 1e-12


def _ipow(x: float, n: int) -> float:
    """x**n by repeated multiplication: exact control over rounding, no libm."""
    r = 1.0
    for _ in range(n):
        r *= x
    return r


def _check_cap(m: int, force_cap: bool) -> None:
    if m > OPTION_CAP and not force_cap:
        raise CapExceeded(
            f"{m} options imply 2^{m} inclusion-exclusion terms; "
            f"the cap is 2^{OPTION_CAP} (pass force_cap=True to override)"
        )


def _require_measurable(a: IntervalAssignment) -> None:
    if a.m < 2:
        raise ValidationError(
            [Violation("TooFewOptions", "the measure needs at least 2 options")]
        )


def _box_simplex_volume(
    ne: list[float], po: list[float], mass: float, exponent: int
) -> float:
    """Volume of {p >= 0, sum(p) = mass, ne <= p <= po}, rescaled so the
    unconstrained mass-1 simplex has volume 1.

    Enumerates subsets recursively; a subset whose max(0, .) argument is
    already nonpositive is pruned together with all its supersets (widths are
    nonnegative, so the argument can only shrink).  Total for any bounds,
    including empty regions, which evaluate to 0.
    """
    m = len(ne)
    base = mass - math.fsum(ne)
    if base <= 0.0 or math.fsum(po) <= mass:
        return 0.0  # empty or measure-zero region, exactly
    widths = [po[i] - ne[i] for i in range(m)]
    if min(widths) <= _WIDTH_FLOOR:
        return 0.0

    total = 0.0

    def rec(start: int, arg: float, sign: float) -> None:
        nonlocal total
        total += sign * _ipow(arg, exponent)
        for j in range(start, m):
            arg2 = arg - widths[j]
            if arg2 > 0.0:
                rec(j + 1, arg2, -sign)

    rec(0, base, 1.0)
    return min(1.0, max(0.0, total))


def freedom(a: IntervalAssignment, *, force_cap: bool = False) -> float:
    """Fraction of the simplex volume compatible with the bounds, in [0, 1].

    Computed on the tightened bounds (same value, better-scaled terms).
    Raises CapExceeded for more than OPTION_CAP options unless forced.
    """
    _require_measurable(a)
    _check_cap(a.m, force_cap)
    ne, po = tightened_bounds(a)
    return _box_simplex_volume(ne, po, 1.0, a.m - 1)


def freedom_conditional(
    a: IntervalAssignment, q: float, *, force_cap: bool = False
) -> float:
    """Unnormalized conditional freedom of a K-option subsystem.

    When the other options have absorbed probability 1-q as point values, the
    retained options range over the right-simplex of height q, and the major
    constant 1 in the freedom expansion is replaced by q:

        F_cond = sum_T (-1)^|T| * max(0, q - W_T)^(K-1)

    This is a volume, not a fraction of the sub-simplex (no division by
    q^(K-1)); at q = 1 it coincides with :func:`freedom` up to the tightening
    of bounds.
    """
    _require_measurable(a)
    _check_cap(a.m, force_cap)
    q = float(q)
    if not (0.0 < q <= 1.0):
        raise DomainError(f"q = {q!r} outside (0, 1]")
    return _box_simplex_volume(list(a.ne), list(a.po), q, a.m - 1)


def normed_freedom(a: IntervalAssignment, *, force_cap: bool = False) -> float:
    """freedom(a) ** (1/(M-1)): partially corrects for the option count
    when comparing assignments of different sizes."""
    f = freedom(a, force_cap=force_cap)
    if a.m == 2 or f == 0.0 or f == 1.0:
        return f
    return f ** (1.0 / (a.m - 1))


def _sorted_po_descending(a: IntervalAssignment) -> list[float]:
    return sorted(a.po, reverse=True)


def yager_ambiguity(a: IntervalAssignment) -> float:
    """Anxiety/ambiguity score over the sorted possibility vector.

    With po sorted descending as p(1) >= ... >= p(M) and p(M+1) = 0:

        A = 1 - sum_i (p(i) - p(i+1)) / i

    A crisp singleton (one po = 1, rest 0) scores 0.  Uses only the po
    vector as given; ties are permitted in the sort.
    """
    p = _sorted_po_descending(a)
    p.append(0.0)
    return 1.0 - math.fsum((p[i] - p[i + 1]) / (i + 1) for i in range(a.m))


def hartley_nonspecificity(a: IntervalAssignment) -> float:
    """Hartley-style nonspecificity in bits over the sorted possibilities:

        I = sum_i (p(i) - p(i+1)) * log2(i)

    Ranges over [0, log2(M)]; note log2(1) = 0, so the largest possibility
    never contributes and raising it leaves I unchanged.
    """
    p = _sorted_po_descending(a)
    p.append(0.0)
    return math.fsum((p[i] - p[i + 1]) * math.log2(i + 1) for i in range(a.m))


@dataclass(frozen=True)
class MeasureReport:
    """All four measures of one assignment (plus the optional conditional)."""

    freedom: float
    yager_ambiguity: float
    hartley_nonspecificity: float
    normed_freedom: float
    m: int
    conditional_freedom: float | None = None
    q: float | None = None


def measure_report(
    a: IntervalAssignment, q: float | None = None, *, force_cap: bool = False
) -> MeasureReport:
    """Bundle F, A, I, S for one assignment.

    Freedom (and its normed form) is computed on the tightened bounds; the
    possibility-only measures use the po vector exactly as given.  When q is
    supplied the unnormalized conditional freedom at mass q is included.
    """
    f = freedom(a, force_cap=force_cap)
    s = f if a.m == 2 or f in (0.0, 1.0) else f ** (1.0 / (a.m - 1))
    cond = None
    if q is not None:
        cond = freedom_conditional(a, q, force_cap=force_cap)
    return MeasureReport(
        freedom=f,
        yager_ambiguity=yager_ambiguity(a),
        hartley_nonspecificity=hartley_nonspecificity(a),
        normed_freedom=s,
        m=a.m,
        conditional_freedom=cond,
        q=q,
    )


@dataclass(frozen=True)
class SubsetEntry:
    """Conditional freedom of one retained subset of options."""

    indices: tuple[int, ...]
    labels: tuple[str, ...]
    q: float
    conditional_freedom: float


@dataclass(frozen=True)
class SubsetScan:
    entries: tuple[SubsetEntry, ...]
    omitted: int


def subset_scan(a: IntervalAssignment, *, force_cap: bool = False) -> SubsetScan:
    """Conditional freedom for every proper subset whose complement is
    entirely point-valued.

    For each proper subset K with |K| >= 2 whose complement options all have
    ne_j = po_j (within tolerance), the complement mass is fixed and the
    retained options move in a right-simplex of height q = 1 - sum of the
    complement's point values; the entry reports F_cond at that q.  Subsets
    whose complement carries interval-valued belief have no defined
    conditional mass and are omitted (counted in ``omitted``).  Singletons
    are excluded: a one-option measure is degenerate.
    """
    if a.m < 3:
        raise ValidationError(
            [Violation("TooFewOptions", "subset scan needs at least 3 options")]
        )
    _check_cap(a.m, force_cap)
    m = a.m
    entries: list[SubsetEntry] = []
    omitted = 0
    for mask in range(1, 1 << m):
        size = mask.bit_count()
        if size < 2 or size == m:
            continue
        kept = [i for i in range(m) if mask >> i & 1]
        rest = [i for i in range(m) if not mask >> i & 1]
        if any(a.po[j] - a.ne[j] > TOLERANCE for j in rest):
            omitted += 1
            continue
        q = 1.0 - math.fsum(a.ne[j] for j in rest)
        if q <= _WIDTH_FLOOR:
            value = 0.0
            q = max(q, 0.0)
        else:
            sub = IntervalAssignment(
                tuple(a.options[i] for i in kept),
                tuple(a.ne[i] for i in kept),
                tuple(a.po[i] for i in kept),
            )
            value = freedom_conditional(sub, q, force_cap=force_cap)
        entries.append(
            SubsetEntry(
                indices=tuple(kept),
                labels=tuple(a.options[i] for i in kept),
                q=q,
                conditional_freedom=value,
            )
        )
    return SubsetScan(entries=tuple(entries), omitted=omitted)
