"""Named evaluation targets for box counting and graph export.

A graph instance bundles a base, exact point evaluation of the remainder
graph, the matching step values, and the truncation slack at a level.  The
abelian-complexity instance rides the rho walk for bulk work; quasi-linear
instances evaluate their engine directly (their bases are small enough that
pointwise evaluation is cheap); the constant instance exists for calibration
(zero slack, exactly b**n boxes at every level).
"""
from __future__ import annotations

from fractions import Fraction

from .badic import BAdicPoint
from .limitfn import (
    ExactPathUnavailableError,
    QLProfile,
    a_exact,
    a_s_exact,
    f_n,
    g_n,
)
from .covers import d4 as _d4
from .rhowalk import iter_rho, window_extrema
from .seq import SequenceEngine, builtin


class GraphInstance:
    """Interface: exact graph/step values and per-column oscillations."""

    name: str
    base: int

    def slack(self, m: int) -> Fraction:
        raise NotImplementedError

    def value(self, x: BAdicPoint) -> Fraction:
        raise NotImplementedError

    def step_value(self, m: int, z: int) -> Fraction:
        raise NotImplementedError

    def column_oscillations(
        self, n: int, p: int, k0: int, k1: int
    ) -> list[tuple[Fraction, Fraction]]:
        """Per column k in [k0, k1): (graph-sample oscillation, step-sample
        oscillation) over the b**p grid points of level n+p in the column."""
        raise NotImplementedError


class RhoGraphInstance(GraphInstance):
    """The abelian-complexity remainder graph over base 4."""

    name = "rho"
    base = 4

    def slack(self, m: int) -> Fraction:
        return Fraction(2, 1 << m)

    def value(self, x: BAdicPoint) -> Fraction:
        return a_exact(x)

    def step_value(self, m: int, z: int) -> Fraction:
        return f_n(BAdicPoint.make(4, z, m), m)

    def column_oscillations(self, n, p, k0, k1):
        m = n + p
        window = 4 ** p
        z0, z1 = k0 * window, k1 * window
        out: list[tuple[Fraction, Fraction]] = []
        den = 1 << m
        for idx, (mn, mx) in enumerate(window_extrema(z0, z1, window)):
            osc_step = Fraction(mx - mn, den)
            if idx == 0 and z0 == 0:
                # z = 0 breaks the uniform shift between step and graph
                # values; sample the first column's graph values directly
                vals = [a_exact(BAdicPoint.make(4, z, m)) for z in range(window)]
                osc_graph = max(vals) - min(vals)
            else:
                osc_graph = osc_step
            out.append((osc_graph, osc_step))
        return out


class ProfileGraphInstance(GraphInstance):
    """A quasi-linear remainder graph with its verified profile."""

    def __init__(self, engine: SequenceEngine, profile: QLProfile, name: str | None = None):
        if profile.b_pow_alpha() is None:
            raise ExactPathUnavailableError(
                "profile instances need integral base**alpha for exact counting"
            )
        self.engine = engine
        self.profile = profile
        self.name = name or engine.name
        self.base = profile.base
        self._d4 = _d4(profile)

    def slack(self, m: int) -> Fraction:
        gap_pow = self.profile.b_pow_gap()
        if gap_pow is None:
            raise ExactPathUnavailableError("need rational base**(alpha-beta)")
        return self._d4 * self.profile.C / gap_pow ** m

    def value(self, x: BAdicPoint) -> Fraction:
        return a_s_exact(self.engine, self.profile, x)

    def step_value(self, m: int, z: int) -> Fraction:
        out = g_n(self.engine, self.profile, BAdicPoint.make(self.base, z, m), m)
        assert isinstance(out, Fraction)
        return out

    def column_oscillations(self, n, p, k0, k1):
        m = n + p
        window = self.base ** p
        out: list[tuple[Fraction, Fraction]] = []
        for k in range(k0, k1):
            g_vals = []
            a_vals = []
            for z in range(k * window, (k + 1) * window):
                x = BAdicPoint.make(self.base, z, m)
                g_vals.append(self.step_value(m, z))
                a_vals.append(a_s_exact(self.engine, self.profile, x))
            out.append((max(a_vals) - min(a_vals), max(g_vals) - min(g_vals)))
        return out


class ConstantGraphInstance(GraphInstance):
    """A constant function; calibration instance with zero slack."""

    def __init__(self, value: Fraction = Fraction(0), base: int = 4):
        self.name = "constant"
        self.base = base
        self._value = Fraction(value)

    def slack(self, m: int) -> Fraction:
        return Fraction(0)

    def value(self, x: BAdicPoint) -> Fraction:
        return self._value

    def step_value(self, m: int, z: int) -> Fraction:
        return self._value

    def column_oscillations(self, n, p, k0, k1):
        zero = Fraction(0)
        return [(zero, zero)] * (k1 - k0)


def default_profile(name: str, verified_to: int = 0) -> QLProfile:
    """The declared (alpha, beta) exponents and minimal constants for the
    shipped sums.  The constants are the exhaustively verified C_min values;
    the quasilinear module recomputes them from scratch."""
    table = {
        "tm_sum": QLProfile(2, Fraction(1), Fraction(0), Fraction(2), verified_to),
        "rs_sum": QLProfile(4, Fraction(1, 2), Fraction(0), Fraction(3), verified_to),
        "rho": QLProfile(4, Fraction(1, 2), Fraction(0), Fraction(2), verified_to),
        "tm_double_sum": QLProfile(2, Fraction(2), Fraction(1), Fraction(2), verified_to),
    }
    try:
        return table[name]
    except KeyError:
        raise KeyError(f"no default profile for {name!r}") from None


def make_instance(name: str, verify_to: int = 1 << 14) -> GraphInstance:
    """Instances by CLI name: rho, tm_sum, rs_sum, constant.

    Profile-backed instances re-verify their quasi-linearity constant over
    [1, verify_to] so the cover heights rest on a checked C, not a guess.
    """
    if name == "rho":
        return RhoGraphInstance()
    if name == "constant":
        return ConstantGraphInstance()
    if name in ("tm_sum", "rs_sum"):
        from .quasilinear import verify_quasilinear

        engine = builtin(name)
        declared = default_profile(name)
        verification = verify_quasilinear(
            engine, declared.base, declared.alpha, declared.beta, verify_to
        )
        return ProfileGraphInstance(engine, verification.profile, name)
    raise KeyError(f"unknown instance {name!r}; have rho, tm_sum, rs_sum, constant")
