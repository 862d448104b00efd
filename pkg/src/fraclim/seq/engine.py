"""Memoized evaluation of parsed recurrence systems.

An engine owns one memo per sequence in the system.  Dense small indices live
in a flat typed array (cheap, cache friendly, no per-value objects); indices
at or above FLAT_LIMIT, and the rare values that do not fit in a machine word,
spill into a dict keyed by index.  Values are pure functions of the spec, so
concurrent readers and duplicated computation are both harmless.
"""
from __future__ import annotations

import sys
from array import array

from .dsl import MissingInitialError, RecurrenceSpec

FLAT_LIMIT = 1 << 22
_UNSET = -(1 << 63)  # array('q') sentinel; a real value equal to it just recomputes


class _Memo:
    __slots__ = ("flat", "spill")

    def __init__(self) -> None:
        self.flat = array("q")
        self.spill: dict[int, int] = {}

    def get(self, n: int) -> int | None:
        if n < len(self.flat):
            v = self.flat[n]
            if v != _UNSET:
                return v
            return self.spill.get(n)
        return self.spill.get(n)

    def put(self, n: int, value: int) -> None:
        if n < FLAT_LIMIT:
            flat = self.flat
            if n >= len(flat):
                grow = max(1024, min(FLAT_LIMIT, max(2 * len(flat), n + 1)) - len(flat))
                flat.extend([_UNSET] * grow)
            try:
                flat[n] = value
                return
            except OverflowError:
                pass
        self.spill[n] = value


class SequenceEngine:
    """Evaluator for the named sequence of a validated RecurrenceSpec."""

    def __init__(self, spec: RecurrenceSpec):
        self.spec = spec
        self._memos: dict[str, _Memo] = {}
        self._initials = spec.initials
        self._rules = spec.rules
        self._rule_floor = spec.base * spec.n_min

    @property
    def name(self) -> str:
        return self.spec.name

    @property
    def base(self) -> int:
        return self.spec.base

    def _memo(self, seq: str) -> _Memo:
        memo = self._memos.get(seq)
        if memo is None:
            memo = self._memos[seq] = _Memo()
        return memo

    def eval(self, n: int) -> int:
        """Value of the named sequence at index n >= 0."""
        return self.eval_seq(self.spec.name, n)

    def eval_seq(self, seq: str, n: int) -> int:
        """Value of any sequence of the system at index n >= 0.

        Iterative worklist evaluation; recursion depth is unbounded only in
        the index magnitude's logarithm, but deep sparse queries (n ~ b**40)
        are common enough that avoiding Python recursion limits matters.
        """
        if n < 0:
            raise ValueError(f"sequence index must be >= 0, got {n}")
        memo = self._memo(seq)
        cached = memo.get(n)
        if cached is not None:
            return cached

        base = self.spec.base
        floor = self._rule_floor
        initials = self._initials
        rules = self._rules
        stack: list[tuple[str, int]] = [(seq, n)]
        while stack:
            cur_seq, cur_n = stack[-1]
            cur_memo = self._memo(cur_seq)
            if cur_memo.get(cur_n) is not None:
                stack.pop()
                continue
            if cur_n < floor:
                try:
                    value = initials[(cur_seq, cur_n)]
                except KeyError:
                    raise MissingInitialError(cur_seq, cur_n) from None
                cur_memo.put(cur_n, value)
                stack.pop()
                continue
            q, i = divmod(cur_n, base)
            rule = rules[(cur_seq, i)]
            missing = False
            total = rule.const
            for term in rule.terms:
                arg = q + term.shift
                sub = self._memo(term.seq).get(arg)
                if sub is None:
                    stack.append((term.seq, arg))
                    missing = True
                else:
                    total += term.coef * sub
            if not missing:
                cur_memo.put(cur_n, total)
                stack.pop()
        result = memo.get(n)
        assert result is not None
        return result

    def delta(self, n: int) -> int:
        """Forward difference s(n+1) - s(n) of the named sequence."""
        if n < 0:
            raise ValueError(f"delta needs n >= 0, got {n}")
        return self.eval(n + 1) - self.eval(n)

    def prefix(self, count: int) -> list[int]:
        """The first `count` values s(0..count-1), evaluated ascending."""
        return [self.eval(n) for n in range(count)]

    def __repr__(self) -> str:
        return f"SequenceEngine({self.spec.name!r}, base={self.spec.base})"


def engine_from_text(text: str) -> SequenceEngine:
    from .dsl import parse_spec

    return SequenceEngine(parse_spec(text))


if sys.maxsize < (1 << 62):  # pragma: no cover
    raise RuntimeError("fraclim requires a 64-bit Python build")
