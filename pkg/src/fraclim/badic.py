"""Exact b-adic rational points and b-adic intervals.

A b-adic point is a non-negative rational p / b**n stored as (base, numerator,
depth) with arbitrary-precision integers; a b-adic interval is the half-open
cell I(n, k) = [k/b**n, (k+1)/b**n).  These are the only coordinates at which
the rest of the library promises exact evaluation, so everything here is
integer arithmetic with no rounding anywhere.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction

_POINT_RE = re.compile(r"^\s*(\d+)\s*(?:/\s*(\d+)\s*(?:\^\s*(\d+))?\s*)?$")


@dataclass(frozen=True, slots=True)
class BAdicPoint:
    """A point p * base**(-depth), kept in canonical form.

    Canonical means depth == 0 or base does not divide the numerator, so each
    value has exactly one representation and digit extraction is well defined.
    Instances are immutable and safe to share across threads.
    """

    base: int
    numerator: int
    depth: int

    def __post_init__(self) -> None:
        if self.base < 2:
            raise ValueError(f"base must be >= 2, got {self.base}")
        if self.numerator < 0:
            raise ValueError(f"numerator must be >= 0, got {self.numerator}")
        if self.depth < 0:
            raise ValueError(f"depth must be >= 0, got {self.depth}")
        if self.depth > 0 and self.numerator % self.base == 0:
            raise ValueError(
                f"{self.numerator}/{self.base}^{self.depth} is not canonical"
            )

    @classmethod
    def make(cls, base: int, numerator: int, depth: int) -> "BAdicPoint":
        """Build a point, canonicalizing (p, n) by stripping factors of b."""
        if base < 2:
            raise ValueError(f"base must be >= 2, got {base}")
        if numerator == 0:
            return cls(base, 0, 0)
        if depth < 0:
            numerator *= base ** (-depth)
            depth = 0
        while depth > 0 and numerator % base == 0:
            numerator //= base
            depth -= 1
        return cls(base, numerator, depth)

    @classmethod
    def from_fraction(cls, base: int, value: Fraction) -> "BAdicPoint":
        """Convert an exact rational representable as p / base**n."""
        den = value.denominator
        scale, depth = 1, 0
        while scale % den != 0:
            scale *= base
            depth += 1
            if depth > 64 * den.bit_length():
                raise ValueError(f"{value} is not {base}-adic")
        return cls.make(base, value.numerator * (scale // den), depth)

    @classmethod
    def parse(cls, text: str, default_base: int = 4) -> "BAdicPoint":
        """Parse the textual form "p/b^n" (also "p/b" for n=1, "p" for n=0)."""
        m = _POINT_RE.match(text)
        if not m:
            raise ValueError(f"cannot parse b-adic point from {text!r}")
        p = int(m.group(1))
        if m.group(2) is None:
            return cls.make(default_base, p, 0)
        b = int(m.group(2))
        n = int(m.group(3)) if m.group(3) is not None else 1
        return cls.make(b, p, n)

    @property
    def value(self) -> Fraction:
        return Fraction(self.numerator, self.base ** self.depth)

    def __str__(self) -> str:
        if self.depth == 0:
            return str(self.numerator)
        return f"{self.numerator}/{self.base}^{self.depth}"

    def digit(self, j: int) -> int:
        """The j-th fractional digit x_j (j >= 1) of the terminating expansion.

        x = floor(x) + sum_{j>=1} x_j * b**(-j); positions past the depth are 0
        (trailing zeros, never trailing b-1 digits).
        """
        if j < 1:
            raise ValueError(f"digit index must be >= 1, got {j}")
        if j > self.depth:
            return 0
        return (self.numerator // self.base ** (self.depth - j)) % self.base

    def floor_scale(self, j: int) -> int:
        """floor(b**j * value), exactly."""
        if j < 0:
            raise ValueError(f"scale must be >= 0, got {j}")
        if j >= self.depth:
            return self.numerator * self.base ** (j - self.depth)
        return self.numerator // self.base ** (self.depth - j)

    def enclosing_interval(self, n: int) -> "BAdicInterval":
        """The level-n cell I(n, k) containing this point; needs value < 1."""
        if self.value >= 1:
            raise ValueError("enclosing_interval only covers points in [0, 1)")
        return BAdicInterval(self.base, n, self.floor_scale(n))

    def scaled(self, j: int) -> "BAdicPoint":
        """The point b**j * value as a new canonical point (j may be negative)."""
        return BAdicPoint.make(self.base, self.numerator, self.depth - j)


@dataclass(frozen=True, slots=True)
class BAdicInterval:
    """The half-open b-adic cell I(n, k) = [k/b**n, (k+1)/b**n)."""

    base: int
    level: int
    index: int

    def __post_init__(self) -> None:
        if self.base < 2:
            raise ValueError(f"base must be >= 2, got {self.base}")
        if self.level < 0:
            raise ValueError(f"level must be >= 0, got {self.level}")
        if not 0 <= self.index < self.base ** self.level:
            raise ValueError(
                f"index {self.index} out of range at level {self.level}"
            )

    @property
    def left(self) -> Fraction:
        return Fraction(self.index, self.base ** self.level)

    @property
    def right(self) -> Fraction:
        return Fraction(self.index + 1, self.base ** self.level)

    @property
    def width(self) -> Fraction:
        return Fraction(1, self.base ** self.level)

    def __str__(self) -> str:
        return f"I({self.level},{self.index})"

    def left_point(self) -> BAdicPoint:
        return BAdicPoint.make(self.base, self.index, self.level)

    def right_point(self) -> BAdicPoint:
        return BAdicPoint.make(self.base, self.index + 1, self.level)

    def contains(self, x: BAdicPoint | Fraction) -> bool:
        v = x.value if isinstance(x, BAdicPoint) else x
        return self.left <= v < self.right

    def children(self) -> list["BAdicInterval"]:
        """The b level-(n+1) cells partitioning this one."""
        return [
            BAdicInterval(self.base, self.level + 1, self.base * self.index + i)
            for i in range(self.base)
        ]

    def parent(self) -> "BAdicInterval":
        if self.level == 0:
            raise ValueError("level-0 cell has no parent")
        return BAdicInterval(self.base, self.level - 1, self.index // self.base)


def point_from_digits(base: int, integer_part: int, digits: list[int]) -> BAdicPoint:
    """Rebuild a point from floor(x) and fractional digits x_1..x_n."""
    p = integer_part
    for d in digits:
        if not 0 <= d < base:
            raise ValueError(f"digit {d} out of range for base {base}")
        p = p * base + d
    return BAdicPoint.make(base, p, len(digits))


def random_point(
    rng: random.Random,
    base: int,
    max_depth: int,
    lo: Fraction = Fraction(0),
    hi: Fraction = Fraction(1),
) -> BAdicPoint:
    """A random b-adic point in (lo, hi], depth uniform in 1..max_depth.

    Used by the randomized suites; determinism comes from the caller's rng.
    """
    depth = rng.randint(1, max_depth)
    scale = base ** depth
    pmin = (lo * scale).__floor__() + 1
    pmax = (hi * scale).__floor__()
    if pmax < pmin:
        raise ValueError("interval too narrow for requested depth")
    return BAdicPoint.make(base, rng.randint(pmin, pmax), depth)
