"""Series remainders, step approximants and certified limit-function values.

Evaluation strategy:

* at b-adic points the remainder series telescope into finite sums plus an
  exactly-known tail, so a(x), a_s(x) and the step values f_n(x), g_n(x) are
  plain Fractions with no error term;
* everything else (square roots, rational powers, limit-function quotients)
  is enclosed in an interval with exact rational endpoints and returned as a
  CertifiedValue whose radius really does bound the distance to the truth.

No floating point is used anywhere on these paths, so the radii only account
for series truncation and for deliberate enclosure of irrational factors.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt

from .badic import BAdicPoint
from .seq import SequenceEngine, builtin, delta_rho
from .seq.dsl import RecurrenceSpec

_SNAP_BITS = 96  # certified mids are snapped to this many fractional bits


class OutOfRangeError(ValueError):
    """Argument outside the exact-evaluation domain."""


class DomainError(ValueError):
    """Argument outside a limit function's domain (e.g. x = 0)."""


class ExactPathUnavailableError(ValueError):
    """Exact evaluation requested where only enclosures are possible."""


# --------------------------------------------------------------------------
# exact-endpoint interval helpers


def iroot(n: int, q: int) -> int:
    """floor(n ** (1/q)) for n >= 0, q >= 1, by integer Newton iteration."""
    if n < 0 or q < 1:
        raise ValueError("iroot needs n >= 0 and q >= 1")
    if n == 0:
        return 0
    if q == 1:
        return n
    if q == 2:
        return isqrt(n)
    x = 1 << (n.bit_length() // q + 1)
    while True:
        y = ((q - 1) * x + n // x ** (q - 1)) // q
        if y >= x:
            break
        x = y
    return x


def sqrt_interval(x: Fraction, prec: int) -> tuple[Fraction, Fraction]:
    """[lo, hi] containing sqrt(x) with hi - lo <= 2**-prec (0 if exact)."""
    if x < 0:
        raise DomainError(f"sqrt of negative value {x}")
    a, b = x.numerator, x.denominator
    m = isqrt(a * b * (1 << (2 * prec)))
    if m * m == a * b * (1 << (2 * prec)):
        v = Fraction(m, b << prec)
        return v, v
    return Fraction(m, b << prec), Fraction(m + 1, b << prec)


def root_interval(x: Fraction, q: int, prec: int) -> tuple[Fraction, Fraction]:
    """[lo, hi] containing x ** (1/q), hi - lo <= 2**-prec."""
    if x < 0:
        raise DomainError(f"even root of negative value {x}")
    a, b = x.numerator, x.denominator
    big = a * b ** (q - 1) * (1 << (q * prec))
    r = iroot(big, q)
    if r ** q == big:
        v = Fraction(r, b << prec)
        return v, v
    return Fraction(r, b << prec), Fraction(r + 1, b << prec)


def pow_interval(x: Fraction, alpha: Fraction, prec: int) -> tuple[Fraction, Fraction]:
    """[lo, hi] containing x ** alpha for x >= 0 and rational alpha >= 0."""
    if x < 0:
        raise DomainError(f"rational power of negative value {x}")
    p, q = alpha.numerator, alpha.denominator
    if x == 0:
        return (Fraction(1), Fraction(1)) if p == 0 else (Fraction(0), Fraction(0))
    return root_interval(x ** p, q, prec)


def _div_interval(
    num_lo: Fraction, num_hi: Fraction, den_lo: Fraction, den_hi: Fraction
) -> tuple[Fraction, Fraction]:
    """Quotient interval for a positive denominator interval."""
    if den_lo <= 0:
        raise DomainError("denominator interval must be strictly positive")
    candidates = (num_lo / den_lo, num_lo / den_hi, num_hi / den_lo, num_hi / den_hi)
    return min(candidates), max(candidates)


# --------------------------------------------------------------------------
# certified values


@dataclass(frozen=True, slots=True)
class CertifiedValue:
    """An enclosure [mid - radius, mid + radius] of a real value."""

    mid: Fraction
    radius: Fraction
    n_used: int | None = None

    def __post_init__(self) -> None:
        if self.radius < 0:
            raise ValueError("radius must be >= 0")

    @property
    def lo(self) -> Fraction:
        return self.mid - self.radius

    @property
    def hi(self) -> Fraction:
        return self.mid + self.radius

    @property
    def exact(self) -> bool:
        return self.radius == 0

    def contains(self, value: Fraction) -> bool:
        return self.lo <= value <= self.hi

    def overlaps(self, other: "CertifiedValue") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    @classmethod
    def from_bounds(
        cls, lo: Fraction, hi: Fraction, n_used: int | None = None
    ) -> "CertifiedValue":
        """Enclosure from exact bounds, mid snapped to a bounded-precision grid."""
        if hi < lo:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        mid = (lo + hi) / 2
        snapped = Fraction(round(mid * (1 << _SNAP_BITS)), 1 << _SNAP_BITS)
        radius = max(snapped - lo, hi - snapped)
        return cls(snapped, radius, n_used)

    @classmethod
    def exact_value(cls, value: Fraction, n_used: int | None = None) -> "CertifiedValue":
        return cls(value, Fraction(0), n_used)


# --------------------------------------------------------------------------
# quasi-linearity profiles


@dataclass(frozen=True)
class QLProfile:
    """Verified quasi-linearity data (growth exponent, difference exponent,
    uniform constant) for a sequence in a given base."""

    base: int
    alpha: Fraction
    beta: Fraction
    C: Fraction
    verified_to: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        object.__setattr__(self, "beta", Fraction(self.beta))
        object.__setattr__(self, "C", Fraction(self.C))
        if not self.alpha > self.beta >= 0:
            raise ValueError(f"need alpha > beta >= 0, got {self.alpha}, {self.beta}")
        if self.C <= 0:
            raise ValueError(f"need C > 0, got {self.C}")

    def b_pow_alpha(self) -> int | None:
        """base**alpha when it is an exact integer, else None."""
        return _exact_int_power(self.base, self.alpha)

    def b_pow_gap(self) -> Fraction | None:
        """base**(alpha-beta) when it is an exact rational, else None."""
        gap = self.alpha - self.beta
        p, q = gap.numerator, gap.denominator
        r = iroot(self.base ** p, q)
        return Fraction(r) if r ** q == self.base ** p else None

    def tail_bound(self, n: int) -> Fraction:
        """Exact upper bound for |a_s(x) - g_n(x)| on [0, 1]:
        C * base**(-n(alpha-beta)) / (base**(alpha-beta) - 1)."""
        gap_pow = self.b_pow_gap()
        if gap_pow is not None:
            return self.C / (gap_pow - 1) / gap_pow ** n
        glo, _ = pow_interval(Fraction(self.base), self.alpha - self.beta, 64)
        # lower bound of b**gap maximizes the quotient, stays rigorous
        return self.C / (glo - 1) / glo ** n


def _exact_int_power(base: int, alpha: Fraction) -> int | None:
    p, q = alpha.numerator, alpha.denominator
    if p < 0:
        return None
    r = iroot(base ** p, q)
    return r if r ** q == base ** p else None


# --------------------------------------------------------------------------
# the abelian-complexity remainder a(x): digit series over base 4


def digit_weight(y: int) -> int:
    """The digit weight |y - 1| for y in {0, 1, 2, 3}."""
    if y not in (0, 1, 2, 3):
        raise ValueError(f"digit must be in 0..3, got {y}")
    return abs(y - 1)


def a_coeff(x: BAdicPoint, j: int) -> int:
    """The sign coefficient of the j-th digit series term: -1 while the
    scaled point 4**j x is still below 1, afterwards the rho forward
    difference at floor(4**j x) - 1.  Always +-1."""
    if x.base != 4:
        raise OutOfRangeError("digit series is defined over base 4")
    if j < 1:
        raise ValueError(f"series index must be >= 1, got {j}")
    scaled = x.floor_scale(j)
    if scaled == 0:
        return -1
    return delta_rho(scaled - 1)


def f_n(x: BAdicPoint, n: int) -> Fraction:
    """Level-n step approximant: sum of the first n digit series terms.

    Constant on every level-n cell; exact dyadic rational.
    """
    if x.base != 4:
        raise OutOfRangeError("digit series is defined over base 4")
    if n < 0:
        raise ValueError(f"level must be >= 0, got {n}")
    num = 0  # accumulates f * 2^n
    for j in range(1, n + 1):
        w = digit_weight(x.digit(j))
        if w:
            num += w * a_coeff(x, j) << (n - j)
    return Fraction(num, 1 << n)


def a_exact(x: BAdicPoint) -> Fraction:
    """The remainder a(x) at a 4-adic point of [0, 1], exactly.

    Beyond the point's depth k every digit weight is 1 and every series
    coefficient is +1 (the rho difference at an index of the form 4m-1 is
    always +1, an exhaustively tested consequence of the recurrence), so the
    tail sums to exactly 2**-k; at x = 0 all coefficients are -1 and the
    value is -1.
    """
    if x.base != 4:
        raise OutOfRangeError("a_exact is defined over base 4")
    if x.value < 0 or x.value > 1:
        raise OutOfRangeError(f"a_exact needs x in [0, 1], got {x}")
    if x.numerator == 0:
        return Fraction(-1)
    k = x.depth
    return f_n(x, k) + Fraction(1, 1 << k)


def a_certified(x: BAdicPoint, eps: Fraction) -> CertifiedValue:
    """Enclosure of a(x) of radius <= eps around a step-approximant midpoint."""
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be > 0")
    n = 1
    while Fraction(2, 1 << n) > eps:
        n += 1
    return CertifiedValue(f_n(x, n), Fraction(2, 1 << n), n_used=n)


@lru_cache(maxsize=None)
def _rho_engine() -> SequenceEngine:
    return builtin("rho")


def lambda_rho(x: BAdicPoint, eps: Fraction) -> CertifiedValue:
    """Certified enclosure of the abelian-complexity limit function at a
    4-adic x in (0, 1]: (a(x) + rho(floor(x))) / sqrt(x)."""
    eps = Fraction(eps)
    if x.base != 4:
        raise OutOfRangeError("lambda_rho is defined over base 4")
    if x.numerator == 0:
        raise DomainError("limit function undefined at x = 0")
    if x.value > 1 or eps <= 0:
        raise OutOfRangeError("need x in (0, 1] and eps > 0")
    num = a_exact(x) + _rho_engine().eval(x.floor_scale(0))
    prec = max(16, 4 - (eps.numerator.bit_length() - eps.denominator.bit_length()))
    while True:
        s_lo, s_hi = sqrt_interval(x.value, prec)
        lo, hi = _div_interval(num, num, s_lo, s_hi)
        out = CertifiedValue.from_bounds(lo, hi, n_used=x.depth)
        if out.radius <= eps:
            return out
        prec *= 2


# --------------------------------------------------------------------------
# quasi-linear remainder a_s(x): the c-series for a supplied engine/profile


def c_coeff(engine: SequenceEngine, profile: QLProfile, x: BAdicPoint, j: int) -> int:
    """Series coefficient s(floor(b**j x)) - b**alpha * s(floor(b**(j-1) x))
    on the exact path (integral b**alpha)."""
    B = profile.b_pow_alpha()
    if B is None:
        raise ExactPathUnavailableError(
            f"base**alpha = {profile.base}**{profile.alpha} is not an integer"
        )
    return engine.eval(x.floor_scale(j)) - B * engine.eval(x.floor_scale(j - 1))


def g_n(
    engine: SequenceEngine,
    profile: QLProfile,
    x: BAdicPoint,
    n: int,
    eps: Fraction | None = None,
) -> Fraction | CertifiedValue:
    """Level-n partial sum of the c-series.

    The sum telescopes to base**(-alpha n) * s(floor(b**n x)) - s(floor(x)),
    which the tests pin against the explicit coefficient sum.  Exact Fraction
    when base**alpha is an integer; otherwise a CertifiedValue whose radius
    only covers the enclosure of the irrational weight (default eps 2**-40).
    """
    if x.base != profile.base:
        raise OutOfRangeError(f"point base {x.base} != profile base {profile.base}")
    if n < 0:
        raise ValueError(f"level must be >= 0, got {n}")
    s_n = engine.eval(x.floor_scale(n))
    s_0 = engine.eval(x.floor_scale(0))
    B = profile.b_pow_alpha()
    if B is not None:
        return Fraction(s_n, B ** n) - s_0
    if eps is None:
        eps = Fraction(1, 1 << 40)
    prec = max(16, 4 - (eps.numerator.bit_length() - eps.denominator.bit_length())) + n
    while True:
        w_lo, w_hi = pow_interval(Fraction(1, profile.base ** n), profile.alpha, prec)
        if s_n >= 0:
            lo, hi = s_n * w_lo - s_0, s_n * w_hi - s_0
        else:
            lo, hi = s_n * w_hi - s_0, s_n * w_lo - s_0
        out = CertifiedValue.from_bounds(lo, hi, n_used=n)
        if out.radius <= eps:
            return out
        prec *= 2


def g_series_sum(
    engine: SequenceEngine, profile: QLProfile, x: BAdicPoint, n: int
) -> Fraction:
    """The explicit coefficient-by-coefficient partial sum (exact path only);
    the dual route for g_n's telescoped form."""
    B = profile.b_pow_alpha()
    if B is None:
        raise ExactPathUnavailableError("explicit series sum needs integral base**alpha")
    total = Fraction(0)
    for j in range(1, n + 1):
        total += Fraction(c_coeff(engine, profile, x, j), B ** j)
    return total


def exact_tail_constant(engine: SequenceEngine, profile: QLProfile) -> int | None:
    """The constant value of s(b*N) - b**alpha s(N) over indices N that are
    multiples of b (N >= b * nmin), when the rule system forces one.

    Found by expanding the residue-0 rules symbolically one level deep; if
    every sequence coefficient cancels, the remaining constant makes the
    series tail at b-adic points an exact geometric sum.  Returns None when
    the coefficients do not cancel (or base**alpha is not an integer), in
    which case only certified evaluation is available.
    """
    B = profile.b_pow_alpha()
    if B is None:
        return None
    cache = getattr(engine, "_tail_constant_cache", None)
    if cache is None:
        cache = {}
        engine._tail_constant_cache = cache  # type: ignore[attr-defined]
    if B in cache:
        return cache[B]
    cache[B] = _tail_constant_symbolic(engine.spec, B)
    return cache[B]


def _tail_constant_symbolic(spec: RecurrenceSpec, B: int) -> int | None:
    b, name = spec.base, spec.name
    if (name, 0) not in spec.rules:
        return None

    def expand_at_bm(seq: str, extra_shift: int) -> tuple[dict, int] | None:
        """seq(b*m + extra_shift) as a linear form in values at m + const."""
        q, r = divmod(extra_shift, b)
        rule = spec.rules.get((seq, r))
        if rule is None:
            return None
        form: dict[tuple[str, int], int] = {}
        for t in rule.terms:
            key = (t.seq, q + t.shift)
            form[key] = form.get(key, 0) + t.coef
        return form, rule.const

    # F2: s(b*m) directly
    f2 = expand_at_bm(name, 0)
    if f2 is None:
        return None
    form2, const2 = f2
    # F1: s(b*(b*m)) via one more expansion of every term of the rule for s(b n)
    rule0 = spec.rules[(name, 0)]
    form1: dict[tuple[str, int], int] = {}
    const1 = rule0.const
    for t in rule0.terms:
        sub = expand_at_bm(t.seq, t.shift)
        if sub is None:
            return None
        sform, sconst = sub
        const1 += t.coef * sconst
        for key, coef in sform.items():
            form1[key] = form1.get(key, 0) + t.coef * coef
    # c_int(b*m) = F1 - B*F2 must have all sequence coefficients cancel
    diff = dict(form1)
    for key, coef in form2.items():
        diff[key] = diff.get(key, 0) - B * coef
    if any(diff.values()):
        return None
    return const1 - B * const2


def c_int(engine: SequenceEngine, profile: QLProfile, m: int) -> int:
    """s(b*m) - b**alpha * s(m) for integer m, exact path."""
    B = profile.b_pow_alpha()
    if B is None:
        raise ExactPathUnavailableError("c_int needs integral base**alpha")
    return engine.eval(profile.base * m) - B * engine.eval(m)


def a_s_exact(engine: SequenceEngine, profile: QLProfile, x: BAdicPoint) -> Fraction:
    """The quasi-linear remainder a_s(x) at a b-adic point, exactly.

    Needs the exact path: integral base**alpha and a rule system whose tail
    coefficients cancel (exact_tail_constant).  The series splits into the
    level-k partial sum, finitely many explicit tail coefficients, and a
    geometric tail with the constant coefficient.
    """
    if x.base != profile.base:
        raise OutOfRangeError(f"point base {x.base} != profile base {profile.base}")
    B = profile.b_pow_alpha()
    if B is None:
        raise ExactPathUnavailableError(
            f"base**alpha = {profile.base}**{profile.alpha} is not an integer"
        )
    gamma = exact_tail_constant(engine, profile)
    if gamma is None:
        raise ExactPathUnavailableError(
            "series tail is not a forced constant for this rule system"
        )
    if x.numerator == 0:
        return Fraction(-engine.eval(0))
    k, t = x.depth, x.numerator
    total = g_n(engine, profile, x, k)
    assert isinstance(total, Fraction)
    b, n_min = profile.base, engine.spec.n_min
    # explicit tail coefficients until the constant regime m >= n_min kicks in
    i = 0
    arg = t
    while i == 0 or arg < n_min * b:
        total += Fraction(c_int(engine, profile, arg), B ** (k + 1 + i))
        arg *= b
        i += 1
    # geometric remainder: gamma * sum_{j > k+i} B**-j
    total += Fraction(gamma, (B - 1) * B ** (k + i))
    return total


def a_s_gap(
    engine: SequenceEngine, profile: QLProfile, k: int, t0: int, t1: int
) -> Fraction:
    """a_s(t1 * b**-k) - a_s(t0 * b**-k) exactly, for 1 <= t0, t1 <= b**k - 1.

    On the exact path with nmin = 1 the constant tail parts cancel and the
    gap collapses to base**(-alpha(k+1)) * (s(b*t1) - s(b*t0)); otherwise it
    falls back to two exact evaluations.
    """
    b = profile.base
    if not (1 <= t0 < b ** k and 1 <= t1 < b ** k):
        raise OutOfRangeError("gap endpoints must satisfy 1 <= t <= b**k - 1")
    B = profile.b_pow_alpha()
    if B is not None and engine.spec.n_min == 1 and \
            exact_tail_constant(engine, profile) is not None:
        return Fraction(engine.eval(b * t1) - engine.eval(b * t0), B ** (k + 1))
    x0 = BAdicPoint.make(b, t0, k)
    x1 = BAdicPoint.make(b, t1, k)
    return a_s_exact(engine, profile, x1) - a_s_exact(engine, profile, x0)


def a_s_certified(
    engine: SequenceEngine, profile: QLProfile, x: BAdicPoint, eps: Fraction
) -> CertifiedValue:
    """Enclosure of a_s(x) of radius <= eps.

    Uses the exact path when available (radius 0); otherwise the level-n
    partial sum with the geometric tail bound as radius.
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be > 0")
    try:
        return CertifiedValue.exact_value(a_s_exact(engine, profile, x), n_used=x.depth)
    except ExactPathUnavailableError:
        pass
    n = 1
    while profile.tail_bound(n) > eps / 2:
        n += 1
    g = g_n(engine, profile, x, n, eps=eps / 4)
    tail = profile.tail_bound(n)
    if isinstance(g, Fraction):
        return CertifiedValue.from_bounds(g - tail, g + tail, n_used=n)
    return CertifiedValue.from_bounds(g.lo - tail, g.hi + tail, n_used=n)


def lambda_s_certified(
    engine: SequenceEngine, profile: QLProfile, x: BAdicPoint, eps: Fraction
) -> CertifiedValue:
    """Certified enclosure of the limit function lambda_s at b-adic x in (0, 1]:
    (a_s(x) + s(floor(x))) / x**alpha."""
    eps = Fraction(eps)
    if x.numerator == 0:
        raise DomainError("limit function undefined at x = 0")
    if x.value > 1 or eps <= 0:
        raise OutOfRangeError("need x in (0, 1] and eps > 0")
    s_floor = engine.eval(x.floor_scale(0))
    prec = max(16, 4 - (eps.numerator.bit_length() - eps.denominator.bit_length()))
    eps_a = eps / 4
    while True:
        a_enc = a_s_certified(engine, profile, x, eps_a)
        num_lo, num_hi = a_enc.lo + s_floor, a_enc.hi + s_floor
        d_lo, d_hi = pow_interval(x.value, profile.alpha, prec)
        lo, hi = _div_interval(num_lo, num_hi, d_lo, d_hi)
        out = CertifiedValue.from_bounds(lo, hi, n_used=a_enc.n_used)
        if out.radius <= eps:
            return out
        prec *= 2
        eps_a /= 4


# --------------------------------------------------------------------------
# step-approximant objects


class StepApprox:
    """A level-n step function, constant on every b-adic cell of its level."""

    __slots__ = ("base", "level", "label", "_cell_value")

    def __init__(self, base: int, level: int, label: str, cell_value) -> None:
        self.base = base
        self.level = level
        self.label = label
        self._cell_value = cell_value

    def value_at(self, k: int) -> Fraction:
        return self._cell_value(k)

    def __call__(self, x: BAdicPoint) -> Fraction:
        if x.base != self.base:
            raise OutOfRangeError(f"point base {x.base} != step base {self.base}")
        return self.value_at(x.floor_scale(self.level))

    def __repr__(self) -> str:
        return f"StepApprox({self.label}, base={self.base}, level={self.level})"


def f_step(n: int) -> StepApprox:
    """The level-n digit-series step approximant as a step-function object."""
    def cell(k: int) -> Fraction:
        return f_n(BAdicPoint.make(4, k, n), n)

    return StepApprox(4, n, f"f_{n}", cell)


def g_step(engine: SequenceEngine, profile: QLProfile, n: int) -> StepApprox:
    """The level-n c-series step approximant as a step-function object."""
    def cell(k: int) -> Fraction:
        out = g_n(engine, profile, BAdicPoint.make(profile.base, k, n), n)
        if not isinstance(out, Fraction):
            raise ExactPathUnavailableError("step object needs the exact path")
        return out

    return StepApprox(profile.base, n, f"g_{n}[{engine.name}]", cell)
