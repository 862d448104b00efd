"""Column box counting of remainder graphs and log-log slope fitting.

Counts cover the graph of the exact remainder (a or a_s) rather than the
limit function itself: the two graphs are bi-Lipschitz images of each other
away from 0, so the box dimension is the same, and the remainder admits
exact evaluation.  Per column the lower count comes from sampled-value
oscillation (the graph really spans it, so this undercounts), the upper count
folds in twice the truncation slack (the graph cannot leave that envelope,
so this overcounts).  Slopes are fitted to log(count) against log(1/delta)
using the geometric mean of the two counts.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .badic import BAdicInterval, BAdicPoint
from .covers import ResourceGuardError, max_cells
from .instances import GraphInstance


class InsufficientRowsError(ValueError):
    def __init__(self, have: int):
        super().__init__(f"slope fit needs >= 3 rows, got {have}")


@dataclass(frozen=True, slots=True)
class BoxCountRow:
    level: int
    delta: Fraction
    count_lower: int
    count_upper: int


@dataclass(frozen=True)
class BoxCountTable:
    instance: str
    lo: BAdicPoint
    hi: BAdicPoint
    oversample: int
    rows: tuple[BoxCountRow, ...]

    def row(self, level: int) -> BoxCountRow:
        for r in self.rows:
            if r.level == level:
                return r
        raise KeyError(f"no row for level {level}")


@dataclass(frozen=True)
class SlopeFit:
    slope: float
    intercept: float
    stderr: float
    levels: tuple[int, ...]
    residuals: tuple[float, ...]


def column_osc(
    instance: GraphInstance, column: BAdicInterval, p: int
) -> tuple[Fraction, Fraction]:
    """(osc_lower, osc_upper) of the instance graph over one column.

    osc_lower is the exact oscillation of the b**p grid samples of level
    n+p inside the column; osc_upper adds twice the truncation slack to the
    step-value oscillation, which bounds the continuous graph.
    """
    if p < 1:
        raise ValueError(f"oversampling must be >= 1, got {p}")
    if column.base != instance.base:
        raise ValueError("column base does not match the instance")
    n = column.level
    [(osc_graph, osc_step)] = instance.column_oscillations(
        n, p, column.index, column.index + 1
    )
    return osc_graph, osc_step + 2 * instance.slack(n + p)


def box_count(
    instance: GraphInstance,
    lo: BAdicPoint,
    hi: BAdicPoint,
    n: int,
    p: int = 3,
) -> BoxCountRow:
    """Lower/upper box counts of the graph over [lo, hi) at box size b**-n.

    Interval endpoints must be b-adic of level <= n.  Per column the count is
    floor(osc/delta) + 1; lower uses sampled oscillation, upper the slack-
    widened oscillation.
    """
    b = instance.base
    if lo.base != b or hi.base != b:
        raise ValueError("interval endpoints must share the instance base")
    if lo.depth > n or hi.depth > n:
        raise ValueError("interval endpoints must be b-adic of level <= n")
    if not lo.value < hi.value:
        raise ValueError("need lo < hi")
    k0, k1 = lo.floor_scale(n), hi.floor_scale(n)
    if (k1 - k0) * b ** p > max_cells():
        raise ResourceGuardError(
            f"{(k1 - k0) * b ** p} samples exceed the cell budget at level {n}"
        )
    m = n + p
    delta = Fraction(1, b ** n)
    slack2 = 2 * instance.slack(m)
    c_lo = 0
    c_hi = 0
    for osc_graph, osc_step in instance.column_oscillations(n, p, k0, k1):
        c_lo += (osc_graph / delta).__floor__() + 1
        c_hi += ((osc_step + slack2) / delta).__floor__() + 1
    return BoxCountRow(n, delta, c_lo, c_hi)


def box_count_table(
    instance: GraphInstance,
    lo: BAdicPoint,
    hi: BAdicPoint,
    levels: range,
    p: int = 3,
) -> BoxCountTable:
    rows = tuple(box_count(instance, lo, hi, n, p) for n in levels)
    return BoxCountTable(instance.name, lo, hi, p, rows)


def fit_dimension(table: BoxCountTable, levels: range | None = None) -> SlopeFit:
    """Least-squares slope of log(count) against log(1/delta), with counts
    taken as the geometric mean of the lower/upper brackets."""
    rows = [r for r in table.rows if levels is None or r.level in levels]
    if len(rows) < 3:
        raise InsufficientRowsError(len(rows))
    xs = [math.log(float(1 / r.delta)) for r in rows]
    ys = [0.5 * (math.log(r.count_lower) + math.log(r.count_upper)) for r in rows]
    n = len(xs)
    xbar = sum(xs) / n
    ybar = sum(ys) / n
    sxx = sum((x - xbar) ** 2 for x in xs)
    sxy = sum((x - xbar) * (y - ybar) for x, y in zip(xs, ys))
    slope = sxy / sxx
    intercept = ybar - slope * xbar
    residuals = tuple(y - (slope * x + intercept) for x, y in zip(xs, ys))
    dof = max(n - 2, 1)
    stderr = math.sqrt(sum(r * r for r in residuals) / dof / sxx)
    return SlopeFit(slope, intercept, stderr, tuple(r.level for r in rows), residuals)
