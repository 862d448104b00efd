"""Parser and validator for the b-regular recurrence DSL.

The format is line oriented, '#' starts a comment:

    base 4
    name rho
    nmin 1                      # optional, default 1
    init rho(0) = 1
    rule rho(4n+0) = 2*rho(n) + 1
    rule rho(4n+2) = rho(n) + rho(n+1)

A file may define several mutually recursive sequences (each needs one rule
per residue); `name` picks the distinguished one.  Rule right-hand sides are
sums of integer constants and integer multiples of seq(n+shift).  Validation
guarantees that evaluation terminates: every recursive argument n+shift is
strictly below b*n+i whenever n >= nmin, and every initial value an evaluation
can fall through to is present.
"""
from __future__ import annotations

from dataclasses import dataclass, field


class DslError(ValueError):
    """Base class for specification-file problems."""


class DslSyntaxError(DslError):
    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"line {line}, col {column}: {message}")
        self.line = line
        self.column = column


class MissingResidueError(DslError):
    def __init__(self, seq: str, residue: int):
        super().__init__(f"sequence {seq!r} has no rule for residue {residue}")
        self.seq = seq
        self.residue = residue


class DuplicateRuleError(DslError):
    def __init__(self, seq: str, residue: int):
        super().__init__(f"sequence {seq!r} has two rules for residue {residue}")


class NonWellFoundedError(DslError):
    def __init__(self, seq: str, residue: int, shift: int, bound: int):
        super().__init__(
            f"rule for {seq} at residue {residue}: term shift {shift} >= {bound}, "
            f"recursive arguments would not strictly decrease"
        )
        self.seq = seq
        self.residue = residue
        self.shift = shift


class MissingInitialError(DslError):
    def __init__(self, seq: str, index: int):
        super().__init__(f"missing initial value {seq}({index})")
        self.seq = seq
        self.index = index


class UndefinedSequenceError(DslError):
    def __init__(self, seq: str):
        super().__init__(f"sequence {seq!r} is referenced but has no rules")


@dataclass(frozen=True, slots=True)
class Term:
    """coef * seq(n + shift) inside a rule body."""

    coef: int
    seq: str
    shift: int


@dataclass(frozen=True, slots=True)
class Rule:
    """seq(base*n + residue) = sum(terms) + const, applicable for n >= nmin."""

    seq: str
    residue: int
    terms: tuple[Term, ...]
    const: int


@dataclass(frozen=True)
class RecurrenceSpec:
    """A validated recurrence system."""

    base: int
    name: str
    n_min: int
    initials: dict[tuple[str, int], int]
    rules: dict[tuple[str, int], Rule]
    source: str = field(repr=False, default="")

    @property
    def sequences(self) -> set[str]:
        return {seq for seq, _ in self.rules}

    def rule(self, seq: str, residue: int) -> Rule:
        return self.rules[(seq, residue)]


def _tokenize_expr(line_no: int, text: str, offset: int) -> list[tuple[str, str, int]]:
    toks = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        col = offset + i + 1
        if c in "+-*()":
            toks.append((c, c, col))
            i += 1
        elif c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("int", text[i:j], col))
            i = j
        elif c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(("ident", text[i:j], col))
            i = j
        else:
            raise DslSyntaxError(line_no, col, f"unexpected character {c!r}")
    toks.append(("end", "", offset + n + 1))
    return toks


def _parse_expr(line_no: int, text: str, offset: int) -> tuple[tuple[Term, ...], int]:
    """Parse a +/- separated list of constants and coef*seq(n+shift) atoms."""
    toks = _tokenize_expr(line_no, text, offset)
    pos = 0

    def peek() -> tuple[str, str, int]:
        return toks[pos]

    def take(kind: str) -> tuple[str, str, int]:
        nonlocal pos
        t = toks[pos]
        if t[0] != kind:
            raise DslSyntaxError(line_no, t[2], f"expected {kind}, found {t[1]!r}")
        pos += 1
        return t

    terms: list[Term] = []
    const = 0
    sign = 1
    first = True
    while True:
        kind, val, col = peek()
        if kind == "end":
            if first:
                raise DslSyntaxError(line_no, col, "empty expression")
            break
        if not first:
            if kind == "+":
                sign = 1
            elif kind == "-":
                sign = -1
            else:
                raise DslSyntaxError(line_no, col, f"expected '+' or '-', found {val!r}")
            pos += 1
        elif kind in "+-":
            sign = 1 if kind == "+" else -1
            pos += 1
        first = False

        kind, val, col = peek()
        coef = 1
        if kind == "int":
            take("int")
            coef = int(val)
            if peek()[0] == "*":
                take("*")
                kind, val, col = peek()
                if kind != "ident":
                    raise DslSyntaxError(line_no, col, "expected sequence name after '*'")
            else:
                const += sign * coef
                sign = 1
                continue
        if peek()[0] != "ident":
            raise DslSyntaxError(line_no, peek()[2], f"expected term, found {peek()[1]!r}")
        _, seq_name, _ = take("ident")
        take("(")
        kind, val, col = peek()
        if kind != "ident" or val != "n":
            raise DslSyntaxError(line_no, col, "expected 'n' inside argument")
        take("ident")
        shift = 0
        if peek()[0] == "+":
            take("+")
            shift = int(take("int")[1])
        take(")")
        terms.append(Term(sign * coef, seq_name, shift))
        sign = 1
    return tuple(terms), const


_HEAD_KEYS = ("base", "name", "nmin")


def parse_spec(text: str) -> RecurrenceSpec:
    """Parse and validate DSL source, returning a RecurrenceSpec.

    Raises DslSyntaxError / MissingResidueError / NonWellFoundedError /
    MissingInitialError / UndefinedSequenceError on invalid input.
    """
    base: int | None = None
    name: str | None = None
    n_min = 1
    initials: dict[tuple[str, int], int] = {}
    rules: dict[tuple[str, int], Rule] = {}

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        stripped = line.strip()
        key = stripped.split(None, 1)[0]
        rest = stripped[len(key):].strip()
        if key == "base":
            base = _parse_int(line_no, rest, "base")
            if base < 2:
                raise DslSyntaxError(line_no, 1, f"base must be >= 2, got {base}")
        elif key == "name":
            if not rest.isidentifier():
                raise DslSyntaxError(line_no, 1, f"bad sequence name {rest!r}")
            name = rest
        elif key == "nmin":
            n_min = _parse_int(line_no, rest, "nmin")
            if n_min < 1:
                raise DslSyntaxError(line_no, 1, f"nmin must be >= 1, got {n_min}")
        elif key == "init":
            seq, idx, val = _parse_init(line_no, rest)
            initials[(seq, idx)] = val
        elif key == "rule":
            if base is None:
                raise DslSyntaxError(line_no, 1, "rule before 'base' header")
            rule = _parse_rule(line_no, rest, base)
            rk = (rule.seq, rule.residue)
            if rk in rules:
                raise DuplicateRuleError(rule.seq, rule.residue)
            rules[rk] = rule
        else:
            raise DslSyntaxError(line_no, 1, f"unknown directive {key!r}")

    if base is None:
        raise DslSyntaxError(0, 0, "missing 'base' header")
    if name is None:
        raise DslSyntaxError(0, 0, "missing 'name' header")

    spec = RecurrenceSpec(base, name, n_min, initials, rules, source=text)
    validate_spec(spec)
    return spec


def _parse_int(line_no: int, text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise DslSyntaxError(line_no, 1, f"bad integer for {what}: {text!r}") from None


def _parse_init(line_no: int, rest: str) -> tuple[str, int, int]:
    # IDENT(INT) = INT
    lhs, _, rhs = rest.partition("=")
    if not _:
        raise DslSyntaxError(line_no, 1, "init line needs '='")
    lhs = lhs.strip()
    if "(" not in lhs or not lhs.endswith(")"):
        raise DslSyntaxError(line_no, 1, f"bad init left side {lhs!r}")
    seq, arg = lhs[:-1].split("(", 1)
    seq = seq.strip()
    if not seq.isidentifier():
        raise DslSyntaxError(line_no, 1, f"bad sequence name {seq!r}")
    idx = _parse_int(line_no, arg.strip(), "init index")
    if idx < 0:
        raise DslSyntaxError(line_no, 1, "init index must be >= 0")
    val = _parse_int(line_no, rhs.strip(), "init value")
    return seq, idx, val


def _parse_rule(line_no: int, rest: str, base: int) -> Rule:
    lhs, eq, rhs = rest.partition("=")
    if not eq:
        raise DslSyntaxError(line_no, 1, "rule line needs '='")
    lhs = lhs.strip()
    if "(" not in lhs or not lhs.endswith(")"):
        raise DslSyntaxError(line_no, 1, f"bad rule left side {lhs!r}")
    seq, arg = lhs[:-1].split("(", 1)
    seq = seq.strip()
    if not seq.isidentifier():
        raise DslSyntaxError(line_no, 1, f"bad sequence name {seq!r}")
    arg = arg.replace(" ", "")
    # <INT>n or <INT>n+<INT>
    if "n" not in arg:
        raise DslSyntaxError(line_no, 1, f"rule argument {arg!r} must contain 'n'")
    mult_s, _, res_s = arg.partition("n")
    mult = _parse_int(line_no, mult_s, "rule multiplier") if mult_s else 1
    if mult != base:
        raise DslSyntaxError(
            line_no, 1, f"rule argument multiplier {mult} must equal the base {base}"
        )
    if res_s:
        if not res_s.startswith("+"):
            raise DslSyntaxError(line_no, 1, f"bad rule argument {arg!r}")
        residue = _parse_int(line_no, res_s[1:], "rule residue")
    else:
        residue = 0
    if not 0 <= residue < base:
        raise DslSyntaxError(line_no, 1, f"residue {residue} out of range for base {base}")
    offset = rest.index("=") + 1
    terms, const = _parse_expr(line_no, rhs, offset)
    return Rule(seq, residue, terms, const)


def validate_spec(spec: RecurrenceSpec) -> None:
    """Enforce residue coverage, well-foundedness and initial-value closure."""
    b, n_min = spec.base, spec.n_min
    seqs_with_rules = spec.sequences
    has_initials = {seq for seq, _ in spec.initials}
    if spec.name not in seqs_with_rules and spec.name not in has_initials:
        raise UndefinedSequenceError(spec.name)

    for seq in sorted(seqs_with_rules):
        for i in range(b):
            if (seq, i) not in spec.rules:
                raise MissingResidueError(seq, i)

    for (seq, i), rule in sorted(spec.rules.items()):
        for term in rule.terms:
            if term.seq not in seqs_with_rules:
                raise UndefinedSequenceError(term.seq)
            if term.shift >= (b - 1) * n_min + i:
                raise NonWellFoundedError(seq, i, term.shift, (b - 1) * n_min + i)

    # Closure: any argument n+shift with n >= n_min that lands below b*n_min
    # must be an initial; those are exactly the indices in [n_min+shift, b*n_min).
    for rule in spec.rules.values():
        for term in rule.terms:
            for idx in range(n_min + term.shift, b * n_min):
                if (term.seq, idx) not in spec.initials:
                    raise MissingInitialError(term.seq, idx)
