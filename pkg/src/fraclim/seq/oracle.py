"""Brute-force abelian-complexity oracle.

Counts distinct Parikh vectors (letter-count vectors) among the length-n
factors of a finite prefix of an infinite word.  Deliberately definition-level
so it can serve as an independent check of the rho recurrence engine.
"""
from __future__ import annotations

from collections.abc import Sequence

from .engine import SequenceEngine


class WindowTooSmallError(ValueError):
    def __init__(self, prefix_len: int, n: int):
        super().__init__(
            f"prefix of length {prefix_len} holds no length-{n} factor window"
        )


def parikh_complexity(word: Sequence[int], n: int) -> int:
    """Number of distinct Parikh vectors among length-n factors of `word`."""
    if n < 1:
        raise ValueError(f"factor length must be >= 1, got {n}")
    if len(word) < n + 1:
        raise WindowTooSmallError(len(word), n)
    alphabet = sorted(set(word))
    if len(alphabet) <= 2:
        # two letters: the count of the first letter determines the vector
        a = alphabet[0]
        seen: set[int] = set()
        count = sum(1 for x in word[:n] if x == a)
        seen.add(count)
        for i in range(len(word) - n):
            if word[i] == a:
                count -= 1
            if word[i + n] == a:
                count += 1
            seen.add(count)
        return len(seen)
    pos = {letter: k for k, letter in enumerate(alphabet)}
    counts = [0] * len(alphabet)
    for x in word[:n]:
        counts[pos[x]] += 1
    vectors = {tuple(counts)}
    for i in range(len(word) - n):
        counts[pos[word[i]]] -= 1
        counts[pos[word[i + n]]] += 1
        vectors.add(tuple(counts))
    return len(vectors)


def abelian_oracle(word_engine: SequenceEngine, n: int, prefix_len: int) -> int:
    """Brute-force abelian complexity of the engine's word at factor length n."""
    if prefix_len < n + 1:
        raise WindowTooSmallError(prefix_len, n)
    word = word_engine.prefix(prefix_len)
    return parikh_complexity(word, n)
