"""Fast range evaluation of the abelian-complexity walk.

The recurrence turns rho into a unit-step walk (|rho(z+1) - rho(z)| = 1), so
contiguous ranges are best evaluated by anchoring one value with the engine
and then stepping with delta_rho.  On top of the plain walk this module
offers per-window extrema (for column oscillations) and an exact count of
indices whose rho-value falls in an integer band.  The counter exploits the
walk's self-similarity: an aligned block [n*4**t, (n+1)*4**t) is completely
determined by (t, rho(n), delta_rho(n)), giving a memoized recursion

    children of (v, s):  (2v+1, -1), (2v, s), (v+w, s), (2w, +1),  w = v + s

with sharp value envelopes for pruning.  That makes band counts over ranges
of ~4**20 indices cheap, which the measure module needs.  Every routine here
is pinned against engine evaluation in the tests.
"""
from __future__ import annotations

from collections.abc import Iterator
from functools import lru_cache

from .seq import SequenceEngine, builtin, delta_rho


@lru_cache(maxsize=None)
def _rho() -> SequenceEngine:
    return builtin("rho")


def rho_at(z: int) -> int:
    """rho(z) via the shared memoized engine (sparse queries stay cheap)."""
    return _rho().eval(z)


def iter_rho(z0: int, z1: int) -> Iterator[int]:
    """Yield rho(z) for z in [z0, z1), walking with delta_rho."""
    v = rho_at(z0)
    for z in range(z0, z1):
        yield v
        v += delta_rho(z)


def window_extrema(z0: int, z1: int, window: int) -> list[tuple[int, int]]:
    """(min, max) of rho over each window of [z0, z1), list form."""
    if (z1 - z0) % window != 0:
        raise ValueError("range length must be a multiple of the window size")
    out: list[tuple[int, int]] = []
    v = rho_at(z0)
    z = z0
    while z < z1:
        mn = mx = v
        end = z + window
        zz = z
        while zz < end:
            n = zz
            step = 1
            while n:
                r = n & 3
                if r == 0:
                    step = -1
                    break
                if r == 3:
                    break
                n >>= 2
            v += step
            zz += 1
            if zz < end:
                if v > mx:
                    mx = v
                elif v < mn:
                    mn = v
        out.append((mn, mx))
        z = end
    return out


def block_envelope(t: int, v: int, s: int) -> tuple[int, int]:
    """Sharp [min, max] of rho over an aligned block of 4**t indices rooted
    at a scale-t node with rho-value v and outgoing step s (= +-1)."""
    if s == 1:
        return (v << t), ((v + 2) << t) - 2
    return ((v - 1) << t), ((v + 1) << t) - 1


def band_count(z0: int, z1: int, lo: int, hi: int) -> int:
    """#{z in [z0, z1): lo <= rho(z) <= hi}, exact.

    Small ranges walk directly; large ranges decompose into aligned blocks
    counted by the self-similar recursion.  The recursion needs block roots
    at index >= 1 (the rules do not cover the block rooted at 0), so a range
    that includes 0 counts that point directly.
    """
    if hi < lo or z1 <= z0:
        return 0
    if z0 == 0:
        return (1 if lo <= 1 <= hi else 0) + band_count(1, z1, lo, hi)
    if z1 - z0 <= 4096:
        return sum(1 for v in iter_rho(z0, z1) if lo <= v <= hi)

    memo: dict[tuple[int, int, int], int] = {}

    def count_block(t: int, v: int, s: int) -> int:
        if t == 0:
            return 1 if lo <= v <= hi else 0
        mn, mx = block_envelope(t, v, s)
        if mn > hi or mx < lo:
            return 0
        if lo <= mn and mx <= hi:
            return 1 << (2 * t)
        key = (t, v, s)
        cached = memo.get(key)
        if cached is not None:
            return cached
        w = v + s
        total = (
            count_block(t - 1, 2 * v + 1, -1)
            + count_block(t - 1, 2 * v, s)
            + count_block(t - 1, v + w, s)
            + count_block(t - 1, 2 * w, 1)
        )
        memo[key] = total
        return total

    total = 0
    z = z0
    while z < z1:
        t = 0
        # largest aligned block starting at z that fits in [z, z1)
        while z % (1 << (2 * (t + 1))) == 0 and z + (1 << (2 * (t + 1))) <= z1:
            t += 1
        n = z >> (2 * t)
        total += count_block(t, rho_at(n), delta_rho(n))
        z += 1 << (2 * t)
    return total
