"""Command-line entry point.

Command groups: seq (eval, check), limit (eval), covers (verify), measure
(mdp), dim (box, fit), ql (verify, condition), verify (all), export (graph).
Exit codes: 0 success, 1 verification failure, 2 usage/parse error, 3
resource guard.  Every run is a pure function of its arguments (seeds
included), and output files carry their provenance as header comments, so
reruns are byte-identical.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import sys
from fractions import Fraction

from . import __version__
from .badic import BAdicPoint
from .covers import ResourceGuardError, max_cells, verify_nesting_range
from .dimension import (
    BoxCountRow,
    BoxCountTable,
    box_count_table,
    fit_dimension,
)
from .instances import ProfileGraphInstance, default_profile, make_instance
from .limitfn import (
    CertifiedValue,
    a_certified,
    a_exact,
    a_s_certified,
    lambda_rho,
    lambda_s_certified,
)
from .measure import CoverMeasure, mdp_scan
from .quasilinear import (
    TSequence,
    check_condition,
    check_syndetic,
    estimate_alpha,
    estimate_beta,
    verify_quasilinear,
)
from .seq import DslError, SequenceEngine, builtin, parse_spec

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_USAGE):
        super().__init__(message)
        self.code = code


# --------------------------------------------------------------------------
# small parsers


def parse_levels(text: str) -> range:
    """"3..10" -> range(3, 11); "7" -> range(7, 8)."""
    if ".." in text:
        lo_s, hi_s = text.split("..", 1)
        lo, hi = int(lo_s), int(hi_s)
    else:
        lo = hi = int(text)
    if hi < lo:
        raise CliError(f"empty level range {text!r}")
    return range(lo, hi + 1)


def parse_fraction(text: str) -> Fraction:
    """Accept "3/4", "2^-20", "0.125" and plain integers."""
    t = text.strip()
    if "^" in t:
        base_s, exp_s = t.split("^", 1)
        return Fraction(int(base_s)) ** int(exp_s)
    return Fraction(t)


def parse_interval(text: str) -> tuple[str, str]:
    if ":" not in text:
        raise CliError(f"interval must look like 1/4:1/2, got {text!r}")
    lo, hi = text.split(":", 1)
    return lo, hi


def _point(text: str, base: int) -> BAdicPoint:
    """"11/4^2" goes through the p/b^n parser, "1/4" through Fraction."""
    if "^" in text:
        return BAdicPoint.parse(text, default_base=base)
    return BAdicPoint.from_fraction(base, parse_fraction(text))


def load_engine(args) -> SequenceEngine:
    if getattr(args, "builtin", None):
        return builtin(args.builtin)
    path = getattr(args, "spec", None)
    if not path:
        raise CliError("need --spec FILE or --builtin NAME")
    try:
        text = open(path, "r", encoding="utf-8").read()
    except OSError as exc:
        raise CliError(f"cannot read spec file {path}: {exc}") from None
    return SequenceEngine(parse_spec(text))


def spec_digest(engine: SequenceEngine) -> str:
    return hashlib.sha256(engine.spec.source.encode()).hexdigest()[:16]


# --------------------------------------------------------------------------
# output plumbing


def provenance(args, extra: dict | None = None) -> dict:
    skip = {"func", "out"}
    params = {
        k: v for k, v in sorted(vars(args).items())
        if k not in skip and v is not None and not callable(v)
    }
    meta = {"tool": f"fraclim {__version__}", "params": params}
    if extra:
        meta.update(extra)
    return meta


def emit_json(payload: dict, out_path: str | None) -> None:
    text = json.dumps(payload, indent=2, default=_jsonable) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def emit_csv(
    header: list[str], rows: list[list], meta: dict, out_path: str | None
) -> None:
    buf = io.StringIO()
    for key, value in meta.items():
        buf.write(f"# {key}: {json.dumps(value, default=_jsonable, sort_keys=True)}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    text = buf.getvalue()
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, BAdicPoint):
        return str(obj)
    if isinstance(obj, range):
        return f"{obj.start}..{obj.stop - 1}"
    if hasattr(obj, "__dict__"):
        return obj.__dict__
    raise TypeError(f"cannot serialize {type(obj)!r}")


def _cert_payload(x: BAdicPoint, enc: CertifiedValue) -> dict:
    return {
        "x": str(x),
        "mid": float(enc.mid),
        "radius": float(enc.radius),
        "mid_exact": str(enc.mid),
        "radius_exact": str(enc.radius),
        "exact": enc.exact,
        "n_used": enc.n_used,
    }


# --------------------------------------------------------------------------
# command implementations


def cmd_seq_eval(args) -> int:
    engine = load_engine(args)
    lo, hi = (int(x) for x in args.range.split("..", 1)) if ".." in args.range else (
        int(args.range), int(args.range))
    if hi < lo:
        raise CliError(f"empty range {args.range!r}")
    rows = [[n, engine.eval(n)] for n in range(lo, hi + 1)]
    meta = provenance(args, {"sequence": engine.name, "spec_sha256": spec_digest(engine)})
    if args.format == "json":
        emit_json({"meta": meta, "values": {str(n): v for n, v in rows}}, args.out)
    else:
        emit_csv(["n", "value"], rows, meta, args.out)
    return EXIT_OK


def cmd_seq_check(args) -> int:
    path = args.spec
    try:
        text = open(path, "r", encoding="utf-8").read()
    except OSError as exc:
        raise CliError(f"cannot read spec file {path}: {exc}") from None
    spec = parse_spec(text)  # DslError propagates -> exit 2 with message
    engine = SequenceEngine(spec)
    sample = [engine.eval(n) for n in range(min(16, spec.base ** 2))]
    emit_json(
        {
            "ok": True,
            "name": spec.name,
            "base": spec.base,
            "nmin": spec.n_min,
            "sequences": sorted(spec.sequences),
            "initials": len(spec.initials),
            "sample": sample,
            "spec_sha256": hashlib.sha256(text.encode()).hexdigest()[:16],
        },
        args.out,
    )
    return EXIT_OK


def cmd_limit_eval(args) -> int:
    eps = parse_fraction(args.eps)
    if args.instance == "rho":
        x = _point(args.x, 4)
        if args.mode == "lambda":
            enc = lambda_rho(x, eps)
        else:
            enc = (
                CertifiedValue.exact_value(a_exact(x), n_used=x.depth)
                if args.exact
                else a_certified(x, eps)
            )
    else:
        inst = make_instance(args.instance)
        assert isinstance(inst, ProfileGraphInstance)
        x = _point(args.x, inst.base)
        if args.mode == "lambda":
            enc = lambda_s_certified(inst.engine, inst.profile, x, eps)
        else:
            enc = a_s_certified(inst.engine, inst.profile, x, eps)
    emit_json({"meta": provenance(args), **_cert_payload(x, enc)}, args.out)
    return EXIT_OK


def cmd_covers_verify(args) -> int:
    levels = parse_levels(args.levels)
    d4_factor = parse_fraction(args.d4) if args.d4 else None
    if args.kind == "F":
        reports = verify_nesting_range("F", levels, d4_factor=d4_factor)
    else:
        inst = make_instance(args.instance)
        assert isinstance(inst, ProfileGraphInstance)
        reports = verify_nesting_range(
            "E", levels, inst.engine, inst.profile, d4_factor=d4_factor
        )
    ok = all(r.ok for r in reports)
    first_bad = next((r for r in reports if not r.ok), None)
    payload = {
        "meta": provenance(args),
        "kind": args.kind,
        "levels": args.levels,
        "pass": ok,
        "checked": sum(r.checked for r in reports),
    }
    if first_bad is not None and first_bad.violation is not None:
        v = first_bad.violation
        payload["violation"] = {
            "parent_level": first_bad.parent_level,
            "parent_index": v.parent_index,
            "child_residue": v.child_residue,
            "parent_rect": [str(q) for q in v.parent_rect],
            "child_rect": [str(q) for q in v.child_rect],
        }
    emit_json(payload, args.out)
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def _measure_from_args(args) -> CoverMeasure:
    n0, k0 = (int(v) for v in args.root.split(":", 1))
    if args.instance == "rho":
        return CoverMeasure("F", n0, k0)
    inst = make_instance(args.instance)
    assert isinstance(inst, ProfileGraphInstance)
    return CoverMeasure("E", n0, k0, inst.engine, inst.profile)


def cmd_measure_mdp(args) -> int:
    measure = _measure_from_args(args)
    report = mdp_scan(
        measure,
        parse_fraction(args.t),
        parse_levels(args.levels),
        args.samples,
        args.seed,
    )
    payload = {
        "meta": provenance(args),
        "label": "sampled upper-ratio witness (evidence, not a proof over all balls)",
        "instance": report.instance,
        "kind": report.kind,
        "t": str(report.t),
        "root": f"{report.root_level}:{report.root_index}",
        "levels": args.levels,
        "samples": report.samples,
        "seed": report.seed,
        "max_ratio": float(report.max_ratio),
        "max_ratio_exact": str(report.max_ratio),
        "arg_square": {
            "x": str(report.arg_square.x),
            "y": str(report.arg_square.y),
            "side": str(report.arg_square.side),
            "level": report.arg_level,
        },
        "count_levels": report.count_levels,
    }
    if args.bound is not None:
        bound = parse_fraction(args.bound)
        payload["bound"] = str(bound)
        payload["within_bound"] = bool(report.max_ratio <= bound)
        emit_json(payload, args.out)
        return EXIT_OK if report.max_ratio <= bound else EXIT_VERIFY_FAILED
    emit_json(payload, args.out)
    return EXIT_OK


def cmd_dim_box(args) -> int:
    inst = make_instance(args.instance)
    lo_s, hi_s = parse_interval(args.interval)
    lo = _point(lo_s, inst.base)
    hi = _point(hi_s, inst.base)
    table = box_count_table(inst, lo, hi, parse_levels(args.levels), args.oversample)
    meta = provenance(args, {"instance": inst.name, "columns": "level,delta,count_lower,count_upper"})
    rows = [
        [r.level, str(r.delta), r.count_lower, r.count_upper] for r in table.rows
    ]
    emit_csv(["level", "delta", "count_lower", "count_upper"], rows, meta, args.out)
    return EXIT_OK


def cmd_dim_fit(args) -> int:
    rows = []
    try:
        with open(args.table, "r", encoding="utf-8") as fh:
            reader = csv.reader(line for line in fh if not line.startswith("#"))
            header = next(reader)
            if header[:4] != ["level", "delta", "count_lower", "count_upper"]:
                raise CliError(f"unexpected table header {header!r}")
            for rec in reader:
                rows.append(
                    BoxCountRow(int(rec[0]), Fraction(rec[1]), int(rec[2]), int(rec[3]))
                )
    except OSError as exc:
        raise CliError(f"cannot read table {args.table}: {exc}") from None
    table = BoxCountTable(
        args.table, BAdicPoint.make(2, 0, 0), BAdicPoint.make(2, 1, 0), 0, tuple(rows)
    )
    levels = parse_levels(args.levels) if args.levels else None
    fit = fit_dimension(table, levels)
    emit_json(
        {
            "meta": provenance(args),
            "slope": fit.slope,
            "intercept": fit.intercept,
            "stderr": fit.stderr,
            "levels": list(fit.levels),
            "residuals": list(fit.residuals),
        },
        args.out,
    )
    return EXIT_OK


def cmd_ql_verify(args) -> int:
    engine = load_engine(args)
    alpha = parse_fraction(args.alpha) if args.alpha else None
    beta = parse_fraction(args.beta) if args.beta is not None else None
    payload: dict = {"meta": provenance(args, {"sequence": engine.name,
                                               "spec_sha256": spec_digest(engine)})}
    if alpha is None or beta is None:
        ea = estimate_alpha(engine, min(args.N, 1 << 14))
        eb = estimate_beta(engine, min(args.N, 1 << 14))
        payload["alpha_estimate"] = {
            "snapped": str(ea.snapped) if ea.snapped is not None else None,
            "raw": ea.raw_slope,
            "window_slope": ea.window_slope,
        }
        payload["beta_estimate"] = {
            "snapped": str(eb.snapped) if eb.snapped is not None else None,
            "raw": eb.raw_slope,
            "window_slope": eb.window_slope,
        }
        if alpha is None and ea.snapped is not None:
            alpha = ea.snapped
        if beta is None and eb.snapped is not None:
            beta = eb.snapped
        if alpha is None or beta is None:
            raise CliError("estimators could not snap exponents; pass --alpha/--beta")
    verification = verify_quasilinear(engine, engine.base, alpha, beta, args.N)
    payload.update(
        {
            "alpha": str(alpha),
            "beta": str(beta),
            "N": args.N,
            "C_min": str(verification.c_min),
            "C_min_float": float(verification.c_min),
            "argmax": list(verification.argmax),
        }
    )
    emit_json(payload, args.out)
    return EXIT_OK


def cmd_ql_condition(args) -> int:
    engine = load_engine(args)
    alpha = parse_fraction(args.alpha)
    beta = parse_fraction(args.beta)
    verification = verify_quasilinear(engine, engine.base, alpha, beta, args.N)
    t_seq = TSequence.parse(args.t) if not args.t_file else TSequence.from_values(
        [int(line) for line in open(args.t_file, encoding="utf-8") if line.strip()]
    )
    syndetic = check_syndetic(t_seq, max(64, min(args.N, 4096)))
    report = check_condition(
        engine,
        verification.profile,
        t_seq,
        args.K,
        parse_fraction(args.c) if args.c else None,
    )
    payload = {
        "meta": provenance(args, {"sequence": engine.name,
                                  "spec_sha256": spec_digest(engine)}),
        "t": t_seq.description,
        "syndetic_bound": syndetic.bound,
        "syndetic_flagged": syndetic.flagged_unbounded,
        "K": report.max_k,
        "pairs_tested": report.pairs_tested,
        "verdict": report.verdict,
        "exact_path": report.exact,
        "best_c": str(report.best_c) if report.best_c is not None else None,
        "best_c_float": float(report.best_c) if report.best_c is not None else None,
        "c_requested": str(report.c_requested) if report.c_requested is not None else None,
        "scope": f"finite prefix k <= {report.max_k} only",
    }
    if report.counterexample is not None:
        k, n, g_lo, g_hi = report.counterexample
        payload["counterexample"] = {
            "k": k, "n": n, "gap_lo": str(g_lo), "gap_hi": str(g_hi)
        }
    emit_json(payload, args.out)
    if report.verdict == "inconclusive":
        return EXIT_VERIFY_FAILED
    return EXIT_OK


def cmd_verify_all(args) -> int:
    levels = parse_levels(args.levels)
    lines: list[tuple[str, bool, str]] = []

    f_levels = levels
    reports = verify_nesting_range("F", f_levels)
    lines.append((f"nesting F {args.levels}", all(r.ok for r in reports), ""))

    tm = make_instance("tm_sum")
    assert isinstance(tm, ProfileGraphInstance)
    reports = verify_nesting_range("E", levels, tm.engine, tm.profile)
    lines.append((f"nesting E tm_sum {args.levels}", all(r.ok for r in reports), ""))

    # truncation bound |a - f_n| <= 2^{1-n} at dyadic spot checks
    import random as _random

    rng = _random.Random(20210)
    ok = True
    from .badic import random_point

    for _ in range(500):
        x = random_point(rng, 4, 12)
        n = rng.randint(1, 16)
        from .limitfn import f_n as _f_n

        if abs(a_exact(x) - _f_n(x, n)) > Fraction(2, 1 << n):
            ok = False
            break
    lines.append(("truncation |a - f_n| <= 2^(1-n) (500 random x)", ok, ""))

    # increment structure: |increment| = 2^-k, sign = rho forward difference,
    # wrap increment 2^-k - 1 (the uniform +2^-k version fails; see README)
    from .seq import delta_rho as _dr

    ok = True
    for k in range(1, 7):
        prev = a_exact(BAdicPoint.make(4, 1, k))
        for z in range(1, 4 ** k - 1):
            cur = a_exact(BAdicPoint.make(4, z + 1, k))
            if cur - prev != Fraction(_dr(z), 1 << k):
                ok = False
                break
            prev = cur
        if a_exact(BAdicPoint.make(4, 1, 0)) - a_exact(
            BAdicPoint.make(4, 4 ** k - 1, k)
        ) != Fraction(1, 1 << k) - 1:
            ok = False
        if not ok:
            break
    lines.append(("increment identity (signed form + wrap)", ok, ""))

    measure = CoverMeasure("F", 2, 5)
    report = mdp_scan(measure, Fraction(3, 2), range(3, 7), 2000, args.seed)
    bound = Fraction(4 ** (2 + 3))
    lines.append(
        (
            "mdp scan rho t=3/2 levels 3..6",
            report.max_ratio <= bound,
            f"max_ratio={float(report.max_ratio):.1f} bound={float(bound):.0f}",
        )
    )

    all_ok = all(ok for _, ok, _ in lines)
    for name, ok, note in lines:
        status = "PASS" if ok else "FAIL"
        suffix = f"  ({note})" if note else ""
        print(f"[{status}] {name}{suffix}")
    print("verify all:", "PASS" if all_ok else "FAIL")
    return EXIT_OK if all_ok else EXIT_VERIFY_FAILED


def cmd_export_graph(args) -> int:
    inst = make_instance(args.instance)
    n = args.level
    eps = parse_fraction(args.eps)
    b = inst.base
    if b ** n > max_cells():
        raise ResourceGuardError(f"{b ** n} rows exceed the cell budget")
    rows = []
    if args.mode == "a":
        for k in range(b ** n + 1):
            x = BAdicPoint.make(b, k, n)
            rows.append([str(x), repr(float(inst.value(x))), "0"])
    else:
        for k in range(b ** n + 1):
            x = BAdicPoint.make(b, k, n)
            if x.numerator == 0:
                continue
            if args.instance == "rho":
                enc = lambda_rho(x, eps)
            else:
                assert isinstance(inst, ProfileGraphInstance)
                enc = lambda_s_certified(inst.engine, inst.profile, x, eps)
            rows.append([str(x), repr(float(enc.mid)), repr(float(enc.radius))])
    meta = provenance(args, {"instance": inst.name, "rows": len(rows)})
    emit_csv(["x", "value", "radius"], rows, meta, args.out)
    return EXIT_OK


# --------------------------------------------------------------------------
# argument wiring


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fraclim",
        description="quasi-linear sequence limit functions: engines, covers, "
        "measures, box dimension",
    )
    groups = parser.add_subparsers(dest="group", required=True)

    seq = groups.add_parser("seq", help="recurrence engines").add_subparsers(
        dest="command", required=True
    )
    p = seq.add_parser("eval", help="evaluate a sequence on a range")
    p.add_argument("--spec")
    p.add_argument("--builtin")
    p.add_argument("--range", default="0..15", help="N or A..B")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_seq_eval)
    p = seq.add_parser("check", help="parse and validate a .seq file")
    p.add_argument("spec")
    p.add_argument("--out")
    p.set_defaults(func=cmd_seq_check)

    limit = groups.add_parser("limit", help="limit functions").add_subparsers(
        dest="command", required=True
    )
    p = limit.add_parser("eval", help="certified evaluation at a b-adic point")
    p.add_argument("--instance", choices=("rho", "tm_sum", "rs_sum"), default="rho")
    p.add_argument("--x", required=True, help='b-adic point, e.g. "11/4^2"')
    p.add_argument("--eps", default="2^-20")
    p.add_argument("--mode", choices=("a", "lambda"), default="a")
    p.add_argument("--exact", action="store_true", help="exact remainder value")
    p.add_argument("--out")
    p.set_defaults(func=cmd_limit_eval)

    covers = groups.add_parser("covers", help="rectangle families").add_subparsers(
        dest="command", required=True
    )
    p = covers.add_parser("verify", help="verify the nesting structure")
    p.add_argument("--kind", choices=("F", "E"), default="F")
    p.add_argument("--levels", default="1..8")
    p.add_argument("--instance", default="tm_sum", help="instance for kind E")
    p.add_argument("--d4", help="override the D4 half-height factor (tamper hook)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_covers_verify)

    measure = groups.add_parser("measure", help="mass distribution").add_subparsers(
        dest="command", required=True
    )
    p = measure.add_parser("mdp", help="sampled mass-distribution scan")
    p.add_argument("--instance", choices=("rho", "tm_sum", "rs_sum"), default="rho")
    p.add_argument("--t", default="1.5", help="exponent (fraction or decimal)")
    p.add_argument("--levels", default="3..10")
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--root", default="2:5", help="root cell n0:k0")
    p.add_argument("--bound", help="optional ratio bound to verify against")
    p.add_argument("--out")
    p.set_defaults(func=cmd_measure_mdp)

    dim = groups.add_parser("dim", help="box-counting dimension").add_subparsers(
        dest="command", required=True
    )
    p = dim.add_parser("box", help="box-count table over an interval")
    p.add_argument("--instance", choices=("rho", "tm_sum", "rs_sum", "constant"),
                   default="rho")
    p.add_argument("--interval", default="1/4:1/2")
    p.add_argument("--levels", default="4..10")
    p.add_argument("--oversample", type=int, default=3)
    p.add_argument("--out")
    p.set_defaults(func=cmd_dim_box)
    p = dim.add_parser("fit", help="log-log slope fit of a box-count table")
    p.add_argument("table")
    p.add_argument("--levels")
    p.add_argument("--out")
    p.set_defaults(func=cmd_dim_fit)

    ql = groups.add_parser("ql", help="quasi-linearity").add_subparsers(
        dest="command", required=True
    )
    p = ql.add_parser("verify", help="verify exponents and find the minimal C")
    p.add_argument("--spec")
    p.add_argument("--builtin")
    p.add_argument("--alpha")
    p.add_argument("--beta")
    p.add_argument("--N", type=int, default=100000)
    p.add_argument("--out")
    p.set_defaults(func=cmd_ql_verify)
    p = ql.add_parser("condition", help="check the remainder-gap condition")
    p.add_argument("--spec")
    p.add_argument("--builtin")
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--N", type=int, default=4096, help="C verification range")
    p.add_argument("--t", default="n", help='t-sequence, e.g. "2n" or "n+1"')
    p.add_argument("--t-file", help="file with one t value per line")
    p.add_argument("--K", type=int, default=10)
    p.add_argument("--c", help="requested constant c")
    p.add_argument("--out")
    p.set_defaults(func=cmd_ql_condition)

    verify = groups.add_parser("verify", help="verification suites").add_subparsers(
        dest="command", required=True
    )
    p = verify.add_parser("all", help="run the lemma-check suites")
    p.add_argument("--levels", default="1..8")
    p.add_argument("--seed", type=int, default=42)
    p.set_defaults(func=cmd_verify_all)

    export = groups.add_parser("export", help="plot-data export").add_subparsers(
        dest="command", required=True
    )
    p = export.add_parser("graph", help="CSV of (x, value, radius) rows")
    p.add_argument("--instance", choices=("rho", "tm_sum", "rs_sum", "constant"),
                   default="rho")
    p.add_argument("--level", type=int, default=8)
    p.add_argument("--mode", choices=("a", "lambda"), default="a")
    p.add_argument("--eps", default="2^-16")
    p.add_argument("--out")
    p.set_defaults(func=cmd_export_graph)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except DslError as exc:
        print(f"spec error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceGuardError as exc:
        print(f"resource guard: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
