"""Cross-classified systems: joint-cell bounds, dependency, and joint volume.

Two option systems observed jointly give a K x M table of joint
probabilities p_ij whose row and column sums are interval-constrained.  Each
cell's necessity and possibility inherit Frechet-style bounds from the
margins:

    max(0, ne_i. + ne_.j - 1) <= ne_ij <= min(ne_i., ne_.j)
    max(0, po_i. + po_.j - 1) <= po_ij <= min(po_i., po_.j)

and the joint nonspecificity (volume of admissible joint tables) has no
closed form here; it is estimated by rejection sampling over the full
(KM-1)-simplex.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .core import TOLERANCE, IntervalAssignment
from .errors import (
    DegenerateCell,
    DomainError,
    FrechetViolation,
    LowAcceptanceWarning,
    TooManyCells,
    ValidationError,
    Violation,
)
from .oracle import _CHUNK, MCEstimate, SplitMix64

# Rejection sampling over the joint simplex degrades quickly with cell
# count; beyond 12 cells the acceptance rate is no longer honest desk-scale.
CELL_CAP = 12

CASE1 = "case1"
CASE2 = "case2"
CASE3A = "case3a"
CASE3B = "case3b"
BOUNDARY = "boundary"


def _check_unit(name: str, v: float) -> float:
    v = float(v)
    if not math.isfinite(v) or v < -TOLERANCE or v > 1.0 + TOLERANCE:
        raise ValidationError([Violation("RangeError", f"{name} = {v!r} outside [0, 1]")])
    return min(max(v, 0.0), 1.0)


def _check_margin_pair(ne: float, po: float, what: str) -> tuple[float, float]:
    ne = _check_unit(f"ne_{what}", ne)
    po = _check_unit(f"po_{what}", po)
    if ne > po + TOLERANCE:
        raise ValidationError(
            [Violation("BoundOrder", f"ne_{what} = {ne!r} exceeds po_{what} = {po!r}")]
        )
    return min(ne, po), po


@dataclass(frozen=True)
class CellBounds:
    """Frechet bounds on one cell's necessity and possibility."""

    ne_lower: float
    ne_upper: float
    po_lower: float
    po_upper: float


def cell_bounds(
    ne_row: float, po_row: float, ne_col: float, po_col: float
) -> CellBounds:
    """Bounds on ne_ij and po_ij induced by one row and one column margin."""
    ne_row, po_row = _check_margin_pair(ne_row, po_row, "row")
    ne_col, po_col = _check_margin_pair(ne_col, po_col, "col")
    return CellBounds(
        ne_lower=max(0.0, ne_row + ne_col - 1.0),
        ne_upper=min(ne_row, ne_col),
        po_lower=max(0.0, po_row + po_col - 1.0),
        po_upper=min(po_row, po_col),
    )


def dependency(p_joint: float, p_row: float, p_col: float) -> float:
    """Dependency index of a cell with point probabilities:

        D = (p_ij - B) / (A - B),  A = min(p_i., p_.j),  B = max(0, p_i. + p_.j - 1)

    D = 1 means maximal overlap, D = 0 maximal disjointness.  D = 1/2 does
    not in general mean statistical independence.  Raises DegenerateCell
    when the Frechet interval [B, A] has zero width (a margin of 0 or 1).
    """
    p_joint = _check_unit("p_joint", p_joint)
    p_row = _check_unit("p_row", p_row)
    p_col = _check_unit("p_col", p_col)
    a = min(p_row, p_col)
    b = max(0.0, p_row + p_col - 1.0)
    if a - b <= 1e-12:
        raise DegenerateCell(
            f"Frechet interval [{b:.12g}, {a:.12g}] has zero width; D undefined"
        )
    if p_joint < b - TOLERANCE or p_joint > a + TOLERANCE:
        raise FrechetViolation(
            f"p_joint = {p_joint:.12g} outside Frechet bounds [{b:.12g}, {a:.12g}]"
        )
    return min(1.0, max(0.0, (p_joint - b) / (a - b)))


@dataclass(frozen=True)
class CellCase:
    """Which dependency extreme maximizes the cell's nonspecificity.

    ``d_maximizing`` is the dependency value (0.0 or 1.0) at which the
    induced p_ij interval is widest, or None on an exact boundary tie.
    """

    case_tag: str
    d_maximizing: float | None


def classify_cell(
    ne_row: float, po_row: float, ne_col: float, po_col: float
) -> CellCase:
    """Classify a cell by its margins and report the extremizing dependency.

    case1 (ne_i. + ne_.j > 1) and case2 (po_i. + po_.j < 1) use strict
    inequalities; everything else is case 3, split by comparing
    1 - min(ne_i., ne_.j) against max(po_i., po_.j) and tagged ``boundary``
    on an exact tie.  The extremizing direction follows the induced-width
    algebra (see :func:`cell_width_vs_dependency`): with w(D) linear in D,

        w(1) - w(0) = (1 - min(ne_i., ne_.j)) - max(po_i., po_.j)

    inside case 3, so the ``>`` branch is widest at D = 1 and the ``<``
    branch at D = 0.  Case 1 is always widest at D = 0 and case 2 at D = 1.
    """
    ne_row, po_row = _check_margin_pair(ne_row, po_row, "row")
    ne_col, po_col = _check_margin_pair(ne_col, po_col, "col")
    if ne_row + ne_col > 1.0:
        return CellCase(case_tag=CASE1, d_maximizing=0.0)
    if po_row + po_col < 1.0:
        return CellCase(case_tag=CASE2, d_maximizing=1.0)
    lhs = 1.0 - min(ne_row, ne_col)
    rhs = max(po_row, po_col)
    if lhs == rhs:
        return CellCase(case_tag=BOUNDARY, d_maximizing=None)
    if lhs > rhs:
        return CellCase(case_tag=CASE3A, d_maximizing=1.0)
    return CellCase(case_tag=CASE3B, d_maximizing=0.0)


def cell_width_vs_dependency(
    ne_row: float, po_row: float, ne_col: float, po_col: float, d: float
) -> float:
    """Width of the induced p_ij interval with the dependency pinned at d.

    With D fixed, p_ij = D*min(a, b) + (1-D)*max(0, a+b-1) as the true
    marginals (a, b) range over their intervals.  That map is nondecreasing
    in both a and b, so the induced set spans exactly from the lower margin
    corner to the upper one; the width is the difference of the two corner
    values.
    """
    ne_row, po_row = _check_margin_pair(ne_row, po_row, "row")
    ne_col, po_col = _check_margin_pair(ne_col, po_col, "col")
    d = float(d)
    if not math.isfinite(d) or d < -TOLERANCE or d > 1.0 + TOLERANCE:
        raise ValidationError([Violation("RangeError", f"d = {d!r} outside [0, 1]")])
    d = min(max(d, 0.0), 1.0)

    def pinned(a: float, b: float) -> float:
        return d * min(a, b) + (1.0 - d) * max(0.0, a + b - 1.0)

    return max(0.0, pinned(po_row, po_col) - pinned(ne_row, ne_col))


@dataclass(frozen=True)
class CrossTable:
    """Interval-constrained margins of a K x M table, plus an optional point
    joint table for dependency analysis.

    A supplied joint must be a K x M matrix of probabilities in [0, 1]
    summing to 1, with every cell inside the Frechet bounds of its margins
    and every row/column sum inside its marginal interval.
    """

    row_marginals: IntervalAssignment
    col_marginals: IntervalAssignment
    joint: tuple[tuple[float, ...], ...] | None = None

    def __post_init__(self) -> None:
        if self.joint is None:
            return
        k, m = self.shape
        joint = tuple(tuple(float(x) for x in row) for row in self.joint)
        if len(joint) != k or any(len(row) != m for row in joint):
            raise ValidationError(
                [Violation("LengthMismatch", f"joint must be {k}x{m}")]
            )
        for i, row in enumerate(joint):
            for j, v in enumerate(row):
                _check_unit(f"joint[{i}][{j}]", v)
        total = math.fsum(x for row in joint for x in row)
        if abs(total - 1.0) > TOLERANCE:
            raise ValidationError(
                [Violation("Infeasible", f"joint sums to {total:.12g}, not 1")]
            )
        rows = self.row_marginals
        cols = self.col_marginals
        for i in range(k):
            for j in range(m):
                lo = max(0.0, rows.ne[i] + cols.ne[j] - 1.0)
                hi = min(rows.po[i], cols.po[j])
                if joint[i][j] < lo - TOLERANCE or joint[i][j] > hi + TOLERANCE:
                    raise FrechetViolation(
                        f"joint[{i}][{j}] = {joint[i][j]:.12g} outside "
                        f"Frechet bounds [{lo:.12g}, {hi:.12g}] of its margins"
                    )
        bad: list[Violation] = []
        for i in range(k):
            s = math.fsum(joint[i])
            if s < rows.ne[i] - TOLERANCE or s > rows.po[i] + TOLERANCE:
                bad.append(
                    Violation(
                        "MarginMismatch",
                        f"row {i} sums to {s:.12g}, outside "
                        f"[{rows.ne[i]:.12g}, {rows.po[i]:.12g}]",
                        i,
                    )
                )
        for j in range(m):
            s = math.fsum(joint[i][j] for i in range(k))
            if s < cols.ne[j] - TOLERANCE or s > cols.po[j] + TOLERANCE:
                bad.append(
                    Violation(
                        "MarginMismatch",
                        f"column {j} sums to {s:.12g}, outside "
                        f"[{cols.ne[j]:.12g}, {cols.po[j]:.12g}]",
                        j,
                    )
                )
        if bad:
            raise ValidationError(bad)
        object.__setattr__(self, "joint", joint)

    @property
    def shape(self) -> tuple[int, int]:
        return self.row_marginals.m, self.col_marginals.m


def case1_census(t: CrossTable) -> list[tuple[int, int]]:
    """All cells (i, j) with ne_i. + ne_.j > 1.

    Two qualifying cells cannot occupy distinct rows and distinct columns
    (their margin necessities would sum past 2, yet each margin's
    necessities total at most 1), so every qualifying cell shares one row
    or one column.  A single row or column necessity above 1/2 can pair
    with several opposite margins, so the census can exceed one cell.
    """
    rows, cols = t.row_marginals, t.col_marginals
    return [
        (i, j)
        for i in range(rows.m)
        for j in range(cols.m)
        if rows.ne[i] + cols.ne[j] > 1.0
    ]


def mc_joint_freedom(t: CrossTable, samples: int, seed: int) -> MCEstimate:
    """Rejection estimate of the joint nonspecificity of a cross table.

    Samples uniform joint tables from the (KM-1)-simplex (cells flattened
    row-major) and accepts those whose row and column sums fall inside the
    marginal intervals; the mean is the accepted fraction, i.e. the volume
    fraction relative to the full joint simplex, the direct generalization
    of the single-margin measure (vacuous margins give exactly 1).

    Sum checks allow a 1e-12 slack: a forced-equality margin (e.g. a single
    row, whose sum is exactly 1) would otherwise be rejected on resummation
    rounding alone.  Raises TooManyCells beyond 12 cells and warns when
    fewer than 100 samples are accepted.
    """
    if samples < 1:
        raise DomainError("samples must be >= 1")
    k, m = t.shape
    cells = k * m
    if cells > CELL_CAP:
        raise TooManyCells(
            f"{k}x{m} = {cells} cells exceeds the {CELL_CAP}-cell sampling cap"
        )
    if cells < 2:
        raise DomainError("need at least 2 cells")
    rng = SplitMix64(seed)
    row_ne = np.array(t.row_marginals.ne) - 1e-12
    row_po = np.array(t.row_marginals.po) + 1e-12
    col_ne = np.array(t.col_marginals.ne) - 1e-12
    col_po = np.array(t.col_marginals.po) + 1e-12
    accepted = 0
    done = 0
    while done < samples:
        rows_n = min(_CHUNK, samples - done)
        u = rng.uniforms(rows_n * (cells - 1)).reshape(cells - 1, rows_n)
        u.sort(axis=0)
        p = np.empty((cells, rows_n))
        p[0] = u[0]
        p[1:-1] = np.diff(u, axis=0)
        p[-1] = 1.0 - u[-1]
        table = p.reshape(k, m, rows_n)
        row_sums = table.sum(axis=1)
        col_sums = table.sum(axis=0)
        ok = np.ones(rows_n, dtype=bool)
        for i in range(k):
            ok &= (row_sums[i] >= row_ne[i]) & (row_sums[i] <= row_po[i])
        for j in range(m):
            ok &= (col_sums[j] >= col_ne[j]) & (col_sums[j] <= col_po[j])
        accepted += int(np.count_nonzero(ok))
        done += rows_n
    if accepted < 100:
        warnings.warn(
            f"only {accepted} of {samples} samples accepted; "
            "the joint estimate is noisy",
            LowAcceptanceWarning,
            stacklevel=2,
        )
    frac = accepted / samples
    se = math.sqrt(frac * (1.0 - frac) / samples)
    return MCEstimate(mean=frac, std_error=se, samples=samples, seed=int(seed))
