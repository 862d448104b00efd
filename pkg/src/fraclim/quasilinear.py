"""Quasi-linearity estimation and verification, syndeticity, and the
remainder-gap condition.

The growth exponents are not machine-decidable from finitely many terms, so
the estimators only suggest rational values; verification always runs against
user-declared exponents and returns the minimal constant over the scanned
range together with that range.  The gap condition checker certifies finite
prefixes (all k up to a bound) and labels its verdicts accordingly; whenever
an enclosure cannot separate a gap from the threshold the verdict degrades to
inconclusive instead of guessing.
"""
from __future__ import annotations

import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from fractions import Fraction

from .limitfn import (
    QLProfile,
    a_s_certified,
    a_s_gap,
    exact_tail_constant,
    pow_interval,
)
from .badic import BAdicPoint
from .seq import SequenceEngine


class AllZeroError(ValueError):
    """The regression window contains no nonzero terms."""


class NotIncreasingError(ValueError):
    def __init__(self, n: int, t_n: int, t_next: int):
        super().__init__(f"t({n + 1}) = {t_next} <= t({n}) = {t_n}; not increasing")
        self.n = n


class InconclusivePrecisionError(RuntimeError):
    """Certified enclosures could not separate a gap from its threshold."""


# --------------------------------------------------------------------------
# exponent estimation


@dataclass(frozen=True)
class ExponentEstimate:
    raw_slope: float
    snapped: Fraction | None
    window_slope: float
    window: tuple[int, int]
    points: int

    @property
    def value(self) -> Fraction | float:
        return self.snapped if self.snapped is not None else self.raw_slope


def _loglog_slope(pairs: list[tuple[float, float]]) -> float:
    n = len(pairs)
    xbar = sum(x for x, _ in pairs) / n
    ybar = sum(y for _, y in pairs) / n
    sxx = sum((x - xbar) ** 2 for x, _ in pairs)
    sxy = sum((x - xbar) * (y - ybar) for x, y in pairs)
    return sxy / sxx


def _snap(slope: float, max_den: int = 4, tol: float = 0.05) -> Fraction | None:
    best: Fraction | None = None
    for den in range(1, max_den + 1):
        cand = Fraction(round(slope * den), den)
        if abs(slope - float(cand)) <= tol and (
            best is None or abs(slope - float(cand)) < abs(slope - float(best))
        ):
            best = cand
    return best


def _estimate(values: Callable[[int], int], N: int) -> ExponentEstimate:
    """Octave-envelope regression: slope of log(max |value| per octave)
    against log(octave endpoint), plus the plain slope over [N/2, N] as a
    diagnostic.

    A growth exponent is a sup-limit, so regressing through the per-octave
    maxima tracks it even for sequences that oscillate through a whole octave
    (a single-window fit does not; the diagnostic slope shows the difference).
    """
    octaves: list[tuple[float, float]] = []
    j = 1
    while (1 << j) <= N:
        lo_n, hi_n = 1 << (j - 1), 1 << j
        m = max(abs(values(n)) for n in range(lo_n, hi_n + 1))
        if m:
            octaves.append((math.log(hi_n), math.log(m)))
        j += 1
    if not octaves:
        raise AllZeroError("sequence vanishes on the sampled range")
    used = octaves[len(octaves) // 2:]
    if len(used) < 3:
        used = octaves
    raw = _loglog_slope(used) if len(used) >= 2 else 0.0
    window_pairs = [
        (math.log(n), math.log(abs(values(n))))
        for n in range(N // 2, N + 1)
        if values(n)
    ]
    window_slope = _loglog_slope(window_pairs) if len(window_pairs) >= 2 else math.nan
    return ExponentEstimate(raw, _snap(raw), window_slope, (N // 2, N), len(used))


def estimate_alpha(engine: SequenceEngine, N: int) -> ExponentEstimate:
    """Estimate of the growth exponent, snapped to a small rational when
    within 0.05 of one."""
    if N < 1 << 10:
        raise ValueError(f"need N >= 1024, got {N}")
    return _estimate(engine.eval, N)


def estimate_beta(engine: SequenceEngine, N: int) -> ExponentEstimate:
    """Like estimate_alpha, for the forward differences."""
    if N < 1 << 10:
        raise ValueError(f"need N >= 1024, got {N}")
    return _estimate(lambda n: engine.eval(n + 1) - engine.eval(n), N)


# --------------------------------------------------------------------------
# verification of the defining inequality


@dataclass(frozen=True)
class QLVerification:
    profile: QLProfile
    c_min: Fraction
    argmax: tuple[int, int]  # (n, i) where the constant is attained
    N: int


def verify_quasilinear(
    engine: SequenceEngine,
    base: int,
    alpha: Fraction,
    beta: Fraction,
    N: int,
) -> QLVerification:
    """Scan |s(b n + i) - b**alpha s(n)| / n**beta over 1 <= n <= N and all
    residues, returning the minimal constant and the resulting profile.

    Exact (integer/Fraction arithmetic) when b**alpha is an integer and beta
    is a non-negative integer; otherwise the constant is a certified upper
    bound computed from interval enclosures of b**alpha.
    """
    alpha, beta = Fraction(alpha), Fraction(beta)
    if N < 1:
        raise ValueError("N must be >= 1")
    if N > 1 << 31:
        raise ValueError(f"N = {N} beyond the overflow guard 2^31")
    prof_probe = QLProfile(base, alpha, beta, Fraction(1))
    B = prof_probe.b_pow_alpha()
    beta_int = beta.denominator == 1
    best_num, best_den = Fraction(0), Fraction(1)
    arg = (1, 0)
    if B is not None and beta_int:
        bexp = int(beta)
        best_n2, best_d2 = 0, 1  # track max |diff| / n^beta as integer pair
        for n in range(1, N + 1):
            sn = engine.eval(n)
            base_idx = base * n
            den = n ** bexp
            for i in range(base):
                diff = engine.eval(base_idx + i) - B * sn
                if diff < 0:
                    diff = -diff
                if diff * best_d2 > best_n2 * den:
                    best_n2, best_d2 = diff, den
                    arg = (n, i)
        c_min = Fraction(best_n2, best_d2)
    else:
        lo_b, hi_b = pow_interval(Fraction(base), alpha, 96)
        c_min = Fraction(0)
        for n in range(1, N + 1):
            sn = engine.eval(n)
            nb_lo, nb_hi = pow_interval(Fraction(n), beta, 64)
            for i in range(base):
                v = engine.eval(base * n + i)
                mag = max(abs(v - lo_b * sn), abs(v - hi_b * sn))
                cand = mag / nb_lo if nb_lo > 0 else mag
                if cand > c_min:
                    c_min = cand
                    arg = (n, i)
    if c_min <= 0:
        # a perfectly linear sequence: any positive constant works
        c_min = Fraction(1, 1 << 30)
    profile = QLProfile(base, alpha, beta, c_min, verified_to=N)
    return QLVerification(profile, c_min, arg, N)


def c_min_stability(
    engine: SequenceEngine,
    base: int,
    alpha: Fraction,
    beta: Fraction,
    N: int,
    growth_flag: float | None = None,
) -> tuple[Fraction, Fraction, float, bool]:
    """(C(N), C(2N), ratio, flagged): the misconfiguration detector.

    flagged when C(2N)/C(N) exceeds base**0.1 (or the supplied threshold),
    which signals a declared alpha below the true growth.
    """
    c1 = verify_quasilinear(engine, base, alpha, beta, N).c_min
    c2 = verify_quasilinear(engine, base, alpha, beta, 2 * N).c_min
    ratio = float(c2 / c1) if c1 > 0 else math.inf
    threshold = growth_flag if growth_flag is not None else float(base) ** 0.1
    return c1, c2, ratio, ratio > threshold


# --------------------------------------------------------------------------
# t-sequences and syndeticity


class TSequence:
    """An increasing integer sequence t_1, t_2, ... (1-based)."""

    def __init__(self, fn: Callable[[int], int], description: str):
        self._fn = fn
        self.description = description

    def __call__(self, n: int) -> int:
        if n < 1:
            raise ValueError("t-sequences are 1-based")
        return self._fn(n)

    @classmethod
    def affine(cls, a: int, c: int = 0) -> "TSequence":
        if a < 1:
            raise ValueError("affine step must be >= 1")
        desc = f"{a}*n{c:+d}" if c else f"{a}*n"
        return cls(lambda n: a * n + c, desc)

    @classmethod
    def from_values(cls, values: Sequence[int]) -> "TSequence":
        vals = list(values)

        def fn(n: int) -> int:
            if n > len(vals):
                raise IndexError(f"t-sequence has only {len(vals)} terms")
            return vals[n - 1]

        return cls(fn, f"enumerated[{len(vals)}]")

    @classmethod
    def parse(cls, text: str) -> "TSequence":
        """Parse affine descriptions like "2n", "2*n", "n+1", "3*n+2"."""
        s = text.replace(" ", "").replace("*", "")
        if "n" not in s:
            raise ValueError(f"cannot parse t-sequence {text!r}")
        head, _, tail = s.partition("n")
        a = int(head) if head else 1
        c = int(tail) if tail else 0
        return cls.affine(a, c)


@dataclass(frozen=True)
class SyndeticReport:
    bound: int | None
    checked: int
    flagged_unbounded: bool
    note: str


def check_syndetic(t_seq: TSequence, N: int) -> SyndeticReport:
    """Max gap of t over [1, N]; flags (heuristically) monotone gap growth
    across the last quartile as likely unboundedness."""
    if N < 2:
        raise ValueError("need N >= 2")
    gaps = []
    prev = t_seq(1)
    for n in range(1, N):
        nxt = t_seq(n + 1)
        if nxt <= prev:
            raise NotIncreasingError(n, prev, nxt)
        gaps.append(nxt - prev)
        prev = nxt
    tail = gaps[3 * len(gaps) // 4:]
    strictly_growing = len(tail) >= 4 and all(
        tail[i] < tail[i + 1] for i in range(len(tail) - 1)
    )
    if strictly_growing:
        return SyndeticReport(
            None, N, True,
            "gaps grow strictly across the last quartile (heuristic flag; "
            "boundedness is not decidable from a prefix)",
        )
    return SyndeticReport(max(gaps), N, False, "max gap over the scanned range")


# --------------------------------------------------------------------------
# the remainder-gap condition


@dataclass(frozen=True)
class ConditionReport:
    """Finite-prefix verdict on the gap condition.

    best_c is the supremum of admissible constants over the tested range:
    every tested gap strictly exceeds c * b**(-alpha k) for every c < best_c
    (at c = best_c itself the extremal gap reaches equality).  The report
    never claims anything beyond max_k.
    """

    instance: str
    t_description: str
    max_k: int
    pairs_tested: int
    verdict: str  # holds_certified | fails_certified | inconclusive
    best_c: Fraction | None
    c_requested: Fraction | None
    counterexample: tuple[int, int, Fraction, Fraction] | None  # k, n, gap lo, hi
    exact: bool


def check_condition(
    engine: SequenceEngine,
    profile: QLProfile,
    t_seq: TSequence,
    K: int,
    c_requested: Fraction | None = None,
) -> ConditionReport:
    """Check the remainder gaps a_s(t_{n+1} b**-k) - a_s(t_n b**-k) against
    c * b**(-alpha k) for every k <= K and consecutive pair with
    1 <= t_n < t_{n+1} <= b**k - 1.

    Exact path: gaps are exact Fractions, best_c = min gap * b**(alpha k).
    Certified path: enclosures refined until each gap separates from the
    threshold; inconclusive if a gap will not separate.
    """
    if K < 0:
        raise ValueError("K must be >= 0")
    c_req = Fraction(c_requested) if c_requested is not None else None
    b = profile.base
    B = profile.b_pow_alpha()
    pairs = 0
    best: Fraction | None = None
    counterexample = None
    exact_path = B is not None and exact_tail_constant(engine, profile) is not None

    for k in range(1, K + 1):
        limit = b ** k - 1
        n = 1
        t_cur = t_seq(n)
        while True:
            t_next = t_seq(n + 1)
            if t_next <= t_cur:
                raise NotIncreasingError(n, t_cur, t_next)
            if t_cur < 1 or t_next > limit:
                if t_next > limit:
                    break
                n += 1
                t_cur = t_next
                continue
            pairs += 1
            threshold = (
                Fraction(c_req, B ** k) if (c_req is not None and B is not None)
                else None
            )
            if exact_path:
                gap = a_s_gap(engine, profile, k, t_cur, t_next)
                assert B is not None
                scaled = gap * B ** k
                if best is None or scaled < best:
                    best = scaled
                if counterexample is None:
                    failed = gap <= 0 if c_req is None else (
                        threshold is not None and gap <= threshold)
                    if failed:
                        counterexample = (k, n, gap, gap)
            else:
                lo, hi = _certified_gap(engine, profile, k, t_cur, t_next, c_req)
                if lo is None:
                    return ConditionReport(
                        engine.name, t_seq.description, K, pairs, "inconclusive",
                        None, c_req, (k, n, hi[0], hi[1]) if hi else None, False,
                    )
                gl, gh = lo
                blo, bhi = pow_interval(Fraction(b), profile.alpha * k, 96)
                scaled = min(gl * blo, gl * bhi)  # lower bound of gap * b^{alpha k}
                if best is None or scaled < best:
                    best = scaled
                if counterexample is None:
                    thr = c_req / bhi if c_req is not None else Fraction(0)
                    if gh <= thr:
                        counterexample = (k, n, gl, gh)
            n += 1
            t_cur = t_next

    if pairs == 0:
        return ConditionReport(
            engine.name, t_seq.description, K, 0, "holds_certified",
            None, c_req, None, exact_path,
        )
    if counterexample is not None:
        verdict = "fails_certified"
    elif best is not None and best > 0:
        verdict = "holds_certified"
    else:
        verdict = "fails_certified"
        assert best is not None
    return ConditionReport(
        engine.name, t_seq.description, K, pairs, verdict, best, c_req,
        counterexample, exact_path,
    )


def _certified_gap(
    engine: SequenceEngine,
    profile: QLProfile,
    k: int,
    t0: int,
    t1: int,
    c_req: Fraction | None,
):
    """Refine certified enclosures of one gap until it separates from both 0
    and the requested threshold; (None, (lo,hi)) when it will not separate."""
    b = profile.base
    x0 = BAdicPoint.make(b, t0, k)
    x1 = BAdicPoint.make(b, t1, k)
    eps = Fraction(1, 1 << 8)
    thr_lo, thr_hi = (Fraction(0), Fraction(0))
    if c_req is not None:
        plo, phi = pow_interval(Fraction(1, b ** k), profile.alpha, 96)
        thr_lo, thr_hi = c_req * plo, c_req * phi
    for _ in range(8):
        e0 = a_s_certified(engine, profile, x0, eps)
        e1 = a_s_certified(engine, profile, x1, eps)
        g_lo, g_hi = e1.lo - e0.hi, e1.hi - e0.lo
        if g_lo > thr_hi or g_hi <= thr_lo:
            return (g_lo, g_hi), None
        eps /= 16
    return None, (g_lo, g_hi)
