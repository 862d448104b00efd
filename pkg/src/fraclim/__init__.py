"""fraclim: exact and certified computation on the limit functions of
quasi-linear sequences.

Subpackages and modules:

* badic       exact b-adic points and intervals
* seq         recurrence DSL, engines, builtins, abelian oracle
* limitfn     remainder series, step approximants, certified limit values
* rhowalk     fast range evaluation of the abelian-complexity walk
* covers      nested rectangle families and nesting verification
* measure     mass distribution, ball measures, MDP scans
* instances   named graph instances for counting and export
* dimension   column box counting and slope fitting
* quasilinear exponent estimation, C verification, gap condition
* cli         the `fraclim` command-line tool
"""

__version__ = "0.1.0"

from .badic import BAdicInterval, BAdicPoint, point_from_digits, random_point
from .covers import (
    DegenerateProfileError,
    LevelMismatchError,
    NestingReport,
    RectFamily,
    ResourceGuardError,
    build_family,
    d4,
    verify_nesting,
    verify_nesting_range,
)
from .dimension import (
    BoxCountRow,
    BoxCountTable,
    InsufficientRowsError,
    SlopeFit,
    box_count,
    box_count_table,
    column_osc,
    fit_dimension,
)
from .instances import (
    ConstantGraphInstance,
    GraphInstance,
    ProfileGraphInstance,
    RhoGraphInstance,
    default_profile,
    make_instance,
)
from .limitfn import (
    CertifiedValue,
    DomainError,
    ExactPathUnavailableError,
    OutOfRangeError,
    QLProfile,
    StepApprox,
    a_certified,
    a_coeff,
    a_exact,
    a_s_certified,
    a_s_exact,
    a_s_gap,
    c_coeff,
    digit_weight,
    exact_tail_constant,
    f_n,
    f_step,
    g_n,
    g_step,
    lambda_rho,
    lambda_s_certified,
)
from .measure import CoverMeasure, MdpReport, Square, mdp_scan
from .quasilinear import (
    AllZeroError,
    ConditionReport,
    ExponentEstimate,
    InconclusivePrecisionError,
    NotIncreasingError,
    QLVerification,
    SyndeticReport,
    TSequence,
    check_condition,
    check_syndetic,
    c_min_stability,
    estimate_alpha,
    estimate_beta,
    verify_quasilinear,
)
from .seq import (
    SequenceEngine,
    UnknownBuiltinError,
    WindowTooSmallError,
    abelian_oracle,
    builtin,
    delta_rho,
    parikh_complexity,
    parse_spec,
)

__all__ = [name for name in dir() if not name.startswith("_")]
