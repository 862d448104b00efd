"""Nested rectangle families over b-adic columns.

An F-family at level n covers the digit-series remainder graph: column k is
the cell I(n, k) thickened vertically around the step value f_n(k/4**n) by
2**(-n+1).  An E-family does the same for a quasi-linear remainder with step
values g_n(k/b**n) and half-height D4 * C * b**(-n(alpha-beta)).  Families at
consecutive levels nest, which is what the measure construction relies on,
and verify_nesting checks that in exact rational arithmetic.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .badic import BAdicInterval, BAdicPoint
from .limitfn import (
    ExactPathUnavailableError,
    QLProfile,
    a_exact,
    a_s_exact,
    pow_interval,
)
from .rhowalk import iter_rho, rho_at
from .seq import SequenceEngine

DEFAULT_MAX_CELLS = 1 << 24


class DegenerateProfileError(ValueError):
    """alpha <= beta leaves no geometric gap for the cover heights."""


class LevelMismatchError(ValueError):
    """verify_nesting needs consecutive levels of the same family kind."""


class ResourceGuardError(RuntimeError):
    """A request would materialize more cells than the configured maximum."""


def max_cells() -> int:
    """Cell budget for family construction; FRACLIM_MAX_CELLS overrides."""
    raw = os.environ.get("FRACLIM_MAX_CELLS")
    if raw is None:
        return DEFAULT_MAX_CELLS
    return int(raw)


def _guard_cells(count: int) -> None:
    budget = max_cells()
    if count > budget:
        raise ResourceGuardError(
            f"{count} cells exceed the budget of {budget}; "
            f"raise FRACLIM_MAX_CELLS to override"
        )


def d4(profile: QLProfile) -> int:
    """The cover-height multiplier floor(3 / (b**(alpha-beta) - 1)) + 1.

    Exact when b**(alpha-beta) is rational; otherwise computed from interval
    enclosures refined until both endpoints agree on the floor (the quotient
    is irrational then, so this terminates).
    """
    if profile.alpha <= profile.beta:
        raise DegenerateProfileError(
            f"need alpha > beta, got {profile.alpha} <= {profile.beta}"
        )
    gap_pow = profile.b_pow_gap()
    if gap_pow is not None:
        return int(3 / (gap_pow - 1)) + 1
    prec = 32
    while True:
        lo, hi = pow_interval(Fraction(profile.base), profile.alpha - profile.beta, prec)
        f_hi = int(3 / (lo - 1))
        f_lo = int(3 / (hi - 1))
        if f_lo == f_hi:
            return f_lo + 1
        prec *= 2


@dataclass(frozen=True)
class RectFamily:
    """All level-n rectangles of one kind, as integer midline numerators over
    a common denominator plus one exact half-height."""

    kind: str  # "F" or "E"
    base: int
    level: int
    mid_num: list[int]
    mid_den: int
    half_height: Fraction
    instance: str = ""

    @property
    def count(self) -> int:
        return len(self.mid_num)

    def column(self, k: int) -> BAdicInterval:
        return BAdicInterval(self.base, self.level, k)

    def midline(self, k: int) -> Fraction:
        return Fraction(self.mid_num[k], self.mid_den)

    def top(self, k: int) -> Fraction:
        return self.midline(k) + self.half_height

    def bottom(self, k: int) -> Fraction:
        return self.midline(k) - self.half_height

    def rect(self, k: int) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        """(left, right, bottom, top) of rectangle k."""
        col = self.column(k)
        return col.left, col.right, self.bottom(k), self.top(k)


def build_family(
    kind: str,
    n: int,
    engine: SequenceEngine | None = None,
    profile: QLProfile | None = None,
    d4_factor: Fraction | None = None,
) -> RectFamily:
    """Construct the level-n family of one kind.

    F ignores engine/profile (it is the abelian-complexity instance); E needs
    both and an exact evaluation path.  d4_factor overrides the half-height
    multiplier D4 (tamper hook for the nesting suite).
    """
    if n < 1:
        raise ValueError(f"family level must be >= 1, got {n}")
    if kind == "F":
        _guard_cells(4 ** n)
        # f_n(z/4^n) * 2^n = rho(z) - 2^n: the step values ride the rho walk
        # (pinned against the digit series by the tests)
        shift = 1 << n
        nums = [v - shift for v in iter_rho(0, 4 ** n)]
        return RectFamily("F", 4, n, nums, 1 << n, Fraction(2, 1 << n), "rho")
    if kind != "E":
        raise ValueError(f"family kind must be 'F' or 'E', got {kind!r}")
    if engine is None or profile is None:
        raise ValueError("kind E needs an engine and a profile")
    b = profile.base
    _guard_cells(b ** n)
    B = profile.b_pow_alpha()
    gap_pow = profile.b_pow_gap()
    if B is None or gap_pow is None:
        raise ExactPathUnavailableError(
            "E-family construction needs integral base**alpha and rational "
            "base**(alpha-beta)"
        )
    factor = Fraction(d4_factor) if d4_factor is not None else Fraction(d4(profile))
    half = factor * profile.C / gap_pow ** n
    # g_n(k/b^n) * B^n = s(k) - B^n s(0) by the telescoped form
    s0 = engine.eval(0)
    den = B ** n
    nums = [engine.eval(k) - den * s0 for k in range(b ** n)]
    return RectFamily("E", b, n, nums, den, half, engine.name)


@dataclass(frozen=True)
class NestingViolation:
    parent_index: int
    child_residue: int
    parent_rect: tuple[Fraction, Fraction, Fraction, Fraction]
    child_rect: tuple[Fraction, Fraction, Fraction, Fraction]


@dataclass(frozen=True)
class NestingReport:
    kind: str
    parent_level: int
    child_level: int
    checked: int
    ok: bool
    violation: NestingViolation | None = None


def verify_nesting(parent: RectFamily, child: RectFamily) -> NestingReport:
    """Check child rectangle (b*k+i) inside parent rectangle k for every k, i.

    Exact integer comparisons; reports the first violation in index order.
    """
    if parent.kind != child.kind or parent.base != child.base:
        raise LevelMismatchError("families must share kind and base")
    if child.level != parent.level + 1:
        raise LevelMismatchError(
            f"child level {child.level} is not parent level {parent.level} + 1"
        )
    b = parent.base
    # scale both families onto one integer grid
    den = _lcm(parent.mid_den, child.mid_den)
    den = _lcm(den, parent.half_height.denominator)
    den = _lcm(den, child.half_height.denominator)
    mp = den // parent.mid_den
    mc = den // child.mid_den
    hp = parent.half_height.numerator * (den // parent.half_height.denominator)
    hc = child.half_height.numerator * (den // child.half_height.denominator)
    p_nums = parent.mid_num
    c_nums = child.mid_num
    checked = 0
    for k in range(parent.count):
        pn = p_nums[k] * mp
        top_p, bot_p = pn + hp, pn - hp
        base_idx = b * k
        for i in range(b):
            cn = c_nums[base_idx + i] * mc
            checked += 1
            if cn + hc > top_p or cn - hc < bot_p:
                return NestingReport(
                    parent.kind, parent.level, child.level, checked, False,
                    NestingViolation(k, i, parent.rect(k), child.rect(base_idx + i)),
                )
    return NestingReport(parent.kind, parent.level, child.level, checked, True)


def verify_nesting_range(
    kind: str,
    levels: range,
    engine: SequenceEngine | None = None,
    profile: QLProfile | None = None,
    d4_factor: Fraction | None = None,
) -> list[NestingReport]:
    """Nesting reports for parent levels in `levels` (children one deeper)."""
    reports = []
    child: RectFamily | None = None
    for n in levels:
        parent = child if child is not None and child.level == n else build_family(
            kind, n, engine, profile, d4_factor)
        child = build_family(kind, n + 1, engine, profile, d4_factor)
        reports.append(verify_nesting(parent, child))
    return reports


def graph_containment_ok(
    family: RectFamily,
    engine: SequenceEngine | None = None,
    profile: QLProfile | None = None,
) -> bool:
    """Check that exact remainder values at both column endpoints lie inside
    each rectangle.

    At a column's right endpoint the remainder may jump (floor(x) steps at
    integers), so the value tested there is the left limit, which adds the
    sequence increment back at integer points.
    """
    n = family.level
    b = family.base
    if family.kind == "F":
        def value(num: int, den_level: int) -> Fraction:
            x = BAdicPoint.make(4, num, den_level)
            v = a_exact(x)
            if x.value == 1:
                v += _rho_limit_jump()
            return v
    else:
        if engine is None or profile is None:
            raise ValueError("E-family containment needs engine and profile")

        def value(num: int, den_level: int) -> Fraction:
            x = BAdicPoint.make(b, num, den_level)
            v = a_s_exact(engine, profile, x)
            if x.value == 1:
                v += engine.eval(1) - engine.eval(0)
            return v

    for k in range(family.count):
        lo, hi = family.bottom(k), family.top(k)
        if not lo <= value(k, n) <= hi:
            return False
        if not lo <= value(k + 1, n) <= hi:
            return False
    return True


def _rho_limit_jump() -> int:
    return rho_at(1) - rho_at(0)


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b
