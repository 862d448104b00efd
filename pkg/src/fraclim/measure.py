"""Mass distribution on the nested rectangle families and ball-measure scans.

The measure assigns b**-m to every level-m rectangle; restricted to one root
rectangle and renormalized it gives each descendant at level m mass
b**(n0-m) and everything else mass 0.  ball_measure evaluates the restricted
measure of a closed square by counting, at a chosen level, the rectangles it
touches; that always over-approximates the measure, which is the conservative
direction for checking mass-distribution-principle style inequalities.  The
scan samples squares centered on the graph (blank squares only lower the
ratio) and reports the worst observed mu(S) / side**t, clearly labeled as
sampled evidence rather than a proof over all balls.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .badic import BAdicPoint
from .covers import ResourceGuardError, d4 as _d4, max_cells
from .limitfn import QLProfile, a_exact, a_s_exact, pow_interval
from .rhowalk import band_count, iter_rho
from .seq import SequenceEngine

_DIRECT_WALK_LIMIT = 1 << 13  # column counts above this use the block recursion


@dataclass(frozen=True, slots=True)
class Square:
    """A closed axis-aligned square given by lower-left corner and side."""

    x: Fraction
    y: Fraction
    side: Fraction

    def __post_init__(self) -> None:
        if self.side <= 0:
            raise ValueError(f"side must be > 0, got {self.side}")

    @property
    def x1(self) -> Fraction:
        return self.x + self.side

    @property
    def y1(self) -> Fraction:
        return self.y + self.side


@dataclass(frozen=True)
class CoverMeasure:
    """The restricted mass distribution on one root cell of a cover family.

    kind "F" is the abelian-complexity instance (base 4); kind "E" needs an
    engine and verified profile.  Families are regenerated on demand from
    (kind, engine, profile), never stored.
    """

    kind: str
    root_level: int
    root_index: int
    engine: SequenceEngine | None = None
    profile: QLProfile | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("F", "E"):
            raise ValueError(f"kind must be 'F' or 'E', got {self.kind!r}")
        if self.kind == "E" and (self.engine is None or self.profile is None):
            raise ValueError("kind E needs an engine and a profile")
        b = self.base
        if not 0 <= self.root_index < b ** self.root_level:
            raise ValueError("root cell index out of range")

    @property
    def base(self) -> int:
        return 4 if self.kind == "F" else self.profile.base  # type: ignore[union-attr]

    def half_height(self, m: int) -> Fraction:
        if self.kind == "F":
            return Fraction(2, 1 << m)
        prof = self.profile
        assert prof is not None
        gap_pow = prof.b_pow_gap()
        if gap_pow is None:
            raise ValueError("E-measure needs rational base**(alpha-beta)")
        return _d4(prof) * prof.C / gap_pow ** m

    def mu_rect(self, m: int, k: int) -> Fraction:
        """Restricted measure of the level-m rectangle k (by the nesting
        structure this only depends on ancestry, not geometry)."""
        b = self.base
        n0, k0 = self.root_level, self.root_index
        if m >= n0:
            return Fraction(1, b ** (m - n0)) if k // b ** (m - n0) == k0 else Fraction(0)
        return Fraction(1) if k0 // b ** (n0 - m) == k else Fraction(0)

    def graph_value(self, x: BAdicPoint) -> Fraction:
        """Exact remainder value at a b-adic point (for centering squares)."""
        if self.kind == "F":
            return a_exact(x)
        return a_s_exact(self.engine, self.profile, x)  # type: ignore[arg-type]

    def _midline_band_count(self, m: int, z_lo: int, z_hi: int,
                            y_lo: Fraction, y_hi: Fraction) -> int:
        """#{z in [z_lo, z_hi]: level-m midline of column z is in [y_lo, y_hi]}."""
        if z_hi < z_lo:
            return 0
        if self.kind == "F":
            # midline = rho(z) * 2^-m - 1: translate the band to rho values
            lo_int = _ceil_frac((y_lo + 1) * (1 << m))
            hi_int = _floor_frac((y_hi + 1) * (1 << m))
            if z_hi - z_lo + 1 <= _DIRECT_WALK_LIMIT:
                return sum(1 for v in iter_rho(z_lo, z_hi + 1) if lo_int <= v <= hi_int)
            return band_count(z_lo, z_hi + 1, lo_int, hi_int)
        engine, prof = self.engine, self.profile
        assert engine is not None and prof is not None
        B = prof.b_pow_alpha()
        if B is None:
            raise ValueError("E-measure ball counting needs integral base**alpha")
        if z_hi - z_lo + 1 > max_cells():
            raise ResourceGuardError(
                f"ball count over {z_hi - z_lo + 1} columns exceeds the cell budget"
            )
        # midline = g_m(z b^-m) = B^-m s(z) - s(0)
        s0 = engine.eval(0)
        den = B ** m
        lo_int = _ceil_frac((y_lo + s0) * den)
        hi_int = _floor_frac((y_hi + s0) * den)
        return sum(
            1 for z in range(z_lo, z_hi + 1) if lo_int <= engine.eval(z) <= hi_int
        )

    def ball_measure(self, square: Square, m: int) -> Fraction:
        """Restricted measure counted through the level-m family: the sum of
        mu over level-m rectangles touching the closed square (boundary
        contact counts).  Exact, and an upper bound for the true measure."""
        n0, k0 = self.root_level, self.root_index
        if m < n0:
            raise ValueError(f"counting level {m} must be >= root level {n0}")
        b = self.base
        z_root_lo = k0 * b ** (m - n0)
        z_root_hi = (k0 + 1) * b ** (m - n0) - 1
        z_lo = max(_floor_frac(square.x * b ** m), z_root_lo)
        z_hi = min(_floor_frac(square.x1 * b ** m), z_root_hi)
        if z_hi < z_lo:
            return Fraction(0)
        h = self.half_height(m)
        count = self._midline_band_count(
            m, z_lo, z_hi, square.y - h, square.y1 + h
        )
        return Fraction(count, b ** (m - n0))


@dataclass(frozen=True)
class MdpReport:
    """Result of a sampled mass-distribution scan.

    Sampled evidence only: the principle quantifies over all balls, a scan
    cannot, so max_ratio is a witness for the worst square encountered.
    """

    kind: str
    instance: str
    t: Fraction
    root_level: int
    root_index: int
    levels: tuple[int, ...]
    samples: int
    seed: int
    max_ratio: Fraction
    arg_square: Square
    arg_level: int
    count_levels: dict[int, int]


def mdp_scan(
    measure: CoverMeasure,
    t: Fraction,
    levels: range,
    samples: int,
    rng_seed: int,
) -> MdpReport:
    """Sample squares of side b**-m for m in `levels`, centered on uniformly
    chosen graph points of the root column, and report max mu(S)/side**t.

    Counting happens at level 2*m (the geometric sweet spot for the nesting
    argument), which the report records.  Same seed, same report.
    """
    t = Fraction(t)
    if t < 0:
        raise ValueError("exponent t must be >= 0")
    levels = tuple(levels)
    if not levels:
        raise ValueError("need at least one level")
    b = measure.base
    n0, k0 = measure.root_level, measure.root_index
    rng = random.Random(rng_seed)
    best: Fraction = Fraction(-1)
    best_square: Square | None = None
    best_level = -1
    count_levels: dict[int, int] = {}
    per_level = [samples // len(levels)] * len(levels)
    for i in range(samples - sum(per_level)):
        per_level[i % len(levels)] += 1
    for m, n_samples in zip(levels, per_level):
        if m < n0:
            raise ValueError(f"square level {m} must be >= root level {n0}")
        mm = 2 * m
        count_levels[m] = mm
        side = Fraction(1, b ** m)
        # conservative (upper) bound of side**t for the denominator
        side_t_lo, _ = pow_interval(side, t, 96)
        grid = b ** (mm - n0)
        for _ in range(n_samples):
            zc = k0 * grid + rng.randrange(grid)
            xc = BAdicPoint.make(b, zc, mm)
            yc = measure.graph_value(xc)
            square = Square(xc.value - side / 2, yc - side / 2, side)
            mu = measure.ball_measure(square, mm)
            ratio = mu / side_t_lo if side_t_lo > 0 else Fraction(0)
            if ratio > best:
                best, best_square, best_level = ratio, square, m
    assert best_square is not None
    name = "rho" if measure.kind == "F" else measure.engine.name  # type: ignore[union-attr]
    return MdpReport(
        measure.kind, name, t, n0, k0, levels, samples, rng_seed,
        best, best_square, best_level, count_levels,
    )


def _floor_frac(x: Fraction) -> int:
    return x.numerator // x.denominator


def _ceil_frac(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)
