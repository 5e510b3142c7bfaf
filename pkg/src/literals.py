"""Text literals for every value the CLI reads or prints.

    interval   [-inf,3/2) [2,5)        {} is the empty union
    points     points=1, 1/2, (0,1)    the prefix is optional
    stepfn     init=0; toggles=0,1
    box        [0,1)x[0,2) [3,4)x[0,1)
    lattice    lattice scale=1/2 offset=(0,0)
    locfin     a lattice or a points literal
    family     universe: a b c / one subset per line, {} for the empty set
    tabfn      a family whose lines end in = 0 or = 1
    catalog    dirac(x0=1/2, carrier=interval)
    sequence   prefix=1,0,1; tail=0
    cofinite   complement=1, 2
    tailed     ray=0; toggle=1/2, 3
    stepset    [0,1) (2,3] {5}
    labels     {a b 1/2}

Grammar errors are reported as LiteralError with line and column.
"""

from fractions import Fraction
from typing import Any, Callable

from pydantic import ValidationError
import pyparsing as pp

from catalog import (
    BinarySequence,
    CatalogSpec,
    CharFunctionCarrier,
    CofiniteCarrier,
    CofiniteSet,
    SequenceCarrier,
    StepRingCarrier,
    StepRingSet,
    TailedCarrier,
    TailedPointSet,
    span,
    step_points,
)
from carriers import FinitePointCarrier, IntervalCarrier, SparseFunctionCarrier, StepFunctionCarrier
from derivable import BoxCarrier, BoxUnion, LocallyFiniteSet
from errors import BinMeasureError, LiteralError, UsageError
from interval_ring import NEG_INF, POS_INF, IntervalUnion, is_finite, normalize
from set_function import Carrier
from set_ring import CharFunction, FiniteUniverse
from step_function import BinaryStepFunction, SparsePointFunction, sf_normalize

KINDS = (
    "interval",
    "points",
    "stepfn",
    "family",
    "tabfn",
    "box",
    "lattice",
    "locfin",
    "catalog",
    "sequence",
    "cofinite",
    "tailed",
    "stepset",
    "labels",
)

LPAR, RPAR, COMMA, SEMI, EQ = map(pp.Suppress, "(),;=")


def _to_rational(s: str, loc: int, toks: pp.ParseResults) -> Fraction:
    num, _, den = toks[0].partition("/")
    if den and int(den) == 0:
        raise pp.ParseFatalException(s, loc, "zero denominator")
    return Fraction(int(num), int(den or 1))


rational = pp.Regex(r"[+-]?\d+(/\d+)?").set_name("rational").set_parse_action(_to_rational)
infinity = pp.Regex(r"[+-]?inf\b").set_name("inf").set_parse_action(
    lambda t: NEG_INF if t[0].startswith("-") else POS_INF
)
ext_rational = (infinity | rational).set_name("extended rational")
bit = pp.one_of("0 1").set_parse_action(lambda t: int(t[0]))
empty_set = pp.Literal("{}").set_parse_action(lambda: [[]])


def _comma_list(item: pp.ParserElement) -> pp.ParserElement:
    return pp.Group(pp.Optional(item + pp.ZeroOrMore(COMMA + item)))


point_tuple = (LPAR + rational + pp.ZeroOrMore(COMMA + rational) + RPAR).set_parse_action(
    lambda t: [tuple(t)]
)
point = (point_tuple | rational).set_name("point")


def _located(s: str, loc: int, toks: pp.ParseResults) -> list:
    start = loc + len(s[loc:]) - len(s[loc:].lstrip())
    return [(toks[0], start)]


located_point = point.copy().add_parse_action(_located)


def _no_duplicates(s: str, loc: int, toks: pp.ParseResults) -> list:
    seen = set()
    for value, where in toks[0]:
        if value in seen:
            raise pp.ParseFatalException(s, where, f"duplicate support point {print_point(value)}")
        seen.add(value)
    return [[value for value, _ in toks[0]]]


point_list = _comma_list(located_point).set_parse_action(_no_duplicates)
points_literal = pp.Optional(pp.Suppress(pp.Keyword("points") + EQ)) + point_list

half_open = pp.Suppress("[") + ext_rational + COMMA + ext_rational + pp.Suppress(")")
interval_literal = empty_set | pp.OneOrMore(pp.Group(half_open))

stepfn_literal = (
    pp.Suppress(pp.Keyword("init") + EQ) + bit + SEMI
    + pp.Suppress(pp.Keyword("toggles") + EQ) + _comma_list(rational)
)

box = pp.Group(pp.Group(half_open) + pp.ZeroOrMore(pp.Suppress("x") + pp.Group(half_open)))
box_literal = empty_set | pp.OneOrMore(box)

lattice_literal = (
    pp.Suppress(pp.Keyword("lattice"))
    + pp.Suppress(pp.Keyword("scale") + EQ) + rational
    + pp.Suppress(pp.Keyword("offset") + EQ) + point_tuple
)

identifier = pp.Word(pp.alphas + "_", pp.alphanums + "_'*-")
label = pp.Word(pp.printables, exclude_chars="{}=")
family_line = empty_set | pp.Group(pp.OneOrMore(label))
tabfn_line = family_line + EQ + bit
universe_line = pp.Suppress(pp.Keyword("universe") + ":") + pp.Group(pp.ZeroOrMore(label))

value = pp.Forward()
kwarg = pp.Group(identifier + EQ + value)
call = (identifier + LPAR + pp.Group(pp.Optional(kwarg + pp.ZeroOrMore(COMMA + kwarg))) + RPAR).set_parse_action(
    lambda t: [{"construction": t[0], "params": {k: v for k, v in t[1]}}]
)
collection = (
    pp.Suppress("{") + pp.Optional(value + pp.ZeroOrMore(pp.Optional(COMMA) + value)) + pp.Suppress("}")
).set_parse_action(lambda t: [tuple(t)])
quoted = pp.QuotedString('"') | pp.QuotedString("'")
value <<= call | collection | ext_rational | quoted | identifier
catalog_literal = call | identifier.copy().set_parse_action(lambda t: [{"construction": t[0], "params": {}}])

sequence_literal = (
    pp.Suppress(pp.Keyword("prefix") + EQ) + _comma_list(bit) + SEMI
    + pp.Suppress(pp.Keyword("tail") + EQ) + bit
)
cofinite_literal = pp.Suppress(pp.Keyword("complement") + EQ) + _comma_list(rational)
tailed_literal = (
    pp.Suppress(pp.Keyword("ray") + EQ) + (pp.Keyword("none").set_parse_action(lambda: [None]) | rational)
    + SEMI + pp.Suppress(pp.Keyword("toggle") + EQ) + _comma_list(rational)
)

bracket_piece = (
    pp.one_of("[ (") + ext_rational + COMMA + ext_rational + pp.one_of("] )")
).set_parse_action(lambda t: [span(t[1], t[2], t[0] == "[", t[3] == "]")])
point_piece = (pp.Suppress("{") + rational + pp.Suppress("}")).set_parse_action(lambda t: [step_points([t[0]])])
stepset_literal = empty_set | pp.OneOrMore(bracket_piece | point_piece)

label_item = rational | identifier
labels_literal = empty_set | (
    pp.Suppress("{") + pp.Group(label_item + pp.ZeroOrMore(pp.Optional(COMMA) + label_item)) + pp.Suppress("}")
)


def _run(kind: str, grammar: pp.ParserElement, text: str, line: int = 1) -> pp.ParseResults:
    try:
        return grammar.parse_string(text, parse_all=True)
    except pp.ParseBaseException as e:
        raise LiteralError(kind, e.msg, line + e.lineno - 1, e.col)


def _build(kind: str, make: Callable[[], Any], line: int = 1) -> Any:
    try:
        return make()
    except BinMeasureError as e:
        if isinstance(e, LiteralError):
            raise
        raise LiteralError(kind, str(e), line)


def _parse_interval(text: str) -> IntervalUnion:
    toks = _run("interval", interval_literal, text)
    return _build("interval", lambda: normalize([tuple(g) for g in toks if len(g)]))


def _parse_points(text: str) -> SparsePointFunction:
    toks = _run("points", points_literal, text)
    if len({len(p) if isinstance(p, tuple) else 1 for p in toks[0]}) > 1:
        raise LiteralError("points", "support points have mixed dimensions")
    return _build("points", lambda: SparsePointFunction.of(toks[0]))


def _parse_stepfn(text: str) -> BinaryStepFunction:
    toks = _run("stepfn", stepfn_literal, text)
    return _build("stepfn", lambda: sf_normalize(toks[0], list(toks[1])))


def _parse_box(text: str, dimension: int | None = None, cap: int = 3) -> BoxUnion:
    toks = _run("box", box_literal, text)
    boxes = [[tuple(side) for side in b] for b in toks if len(b)]
    if not boxes and dimension is None:
        dimension = 1
    return _build("box", lambda: BoxUnion.of(boxes, dimension, cap))


def _parse_lattice(text: str) -> LocallyFiniteSet:
    toks = _run("lattice", lattice_literal, text)
    return _build("lattice", lambda: LocallyFiniteSet.lattice(toks[0], toks[1]))


def _parse_locfin(text: str) -> LocallyFiniteSet:
    if text.lstrip().startswith("lattice"):
        return _parse_lattice(text)
    f = _parse_points(text)
    return _build("locfin", lambda: LocallyFiniteSet.finite(f.support))


def _family_lines(kind: str, text: str) -> tuple[FiniteUniverse, list[tuple[int, list, int]]]:
    lines = [(i + 1, raw) for i, raw in enumerate(text.splitlines()) if raw.strip() and not raw.lstrip().startswith("#")]
    if not lines:
        raise LiteralError(kind, "missing universe line")
    first_no, first = lines[0]
    labels = list(_run(kind, universe_line, first, first_no)[0])
    universe = _build(kind, lambda: FiniteUniverse.of(labels), first_no)
    rows = []
    grammar = tabfn_line if kind == "tabfn" else family_line
    for no, raw in lines[1:]:
        toks = _run(kind, grammar, raw, no)
        rows.append((no, list(toks[0]), toks[1] if kind == "tabfn" else None))
    return universe, rows


def _parse_family(text: str) -> tuple[FiniteUniverse, tuple[int, ...]]:
    universe, rows = _family_lines("family", text)
    return universe, tuple(_build("family", lambda: universe.mask_of(row), no) for no, row, _ in rows)


def _parse_tabfn(text: str) -> tuple[FiniteUniverse, dict[int, int]]:
    universe, rows = _family_lines("tabfn", text)
    values: dict[int, int] = {}
    for no, row, v in rows:
        mask = _build("tabfn", lambda: universe.mask_of(row), no)
        if mask in values:
            raise LiteralError("tabfn", f"subset {{{' '.join(row)}}} is listed twice", no)
        values[mask] = v
    return universe, values


def _parse_catalog(text: str) -> Any:
    toks = _run("catalog", catalog_literal, text)
    try:
        return CatalogSpec.model_validate(toks[0])
    except ValidationError as e:
        raise LiteralError("catalog", f"unknown construction {toks[0]['construction']!r}: {e.errors()[0]['msg']}")


def _parse_sequence(text: str) -> BinarySequence:
    toks = _run("sequence", sequence_literal, text)
    return BinarySequence.of(dict(enumerate(toks[0])), toks[1])


def _parse_cofinite(text: str) -> CofiniteSet:
    toks = _run("cofinite", cofinite_literal, text)
    return CofiniteSet(frozenset(toks[0]))


def _parse_tailed(text: str, direction: str = "up") -> TailedPointSet:
    toks = _run("tailed", tailed_literal, text)
    start = None if toks[0] is None else _build("tailed", lambda: _integer(toks[0]))
    return _build("tailed", lambda: TailedPointSet.of(direction, toks[1], start))


def _integer(x: Fraction) -> int:
    if x.denominator != 1:
        raise UsageError(f"ray start {x} is not an integer")
    return int(x)


def _parse_stepset(text: str) -> StepRingSet:
    toks = _run("stepset", stepset_literal, text)
    out = StepRingSet()
    for piece in toks:
        if isinstance(piece, StepRingSet):
            out = out.combine("or", piece)
    return out


def _parse_labels(text: str) -> frozenset:
    toks = _run("labels", labels_literal, text)
    return frozenset(toks[0])


_PARSERS: dict[str, Callable[[str], Any]] = {
    "interval": _parse_interval,
    "points": _parse_points,
    "stepfn": _parse_stepfn,
    "family": _parse_family,
    "tabfn": _parse_tabfn,
    "box": _parse_box,
    "lattice": _parse_lattice,
    "locfin": _parse_locfin,
    "catalog": _parse_catalog,
    "sequence": _parse_sequence,
    "cofinite": _parse_cofinite,
    "tailed": _parse_tailed,
    "stepset": _parse_stepset,
    "labels": _parse_labels,
}


def parse_literal(kind: str, text: str) -> Any:
    try:
        parser = _PARSERS[kind]
    except KeyError:
        raise UsageError(f"unknown literal kind {kind!r}, expected one of {', '.join(KINDS)}")
    return parser(text)


def parse_box(text: str, dimension: int | None = None, cap: int = 3) -> BoxUnion:
    return _parse_box(text, dimension, cap)


def parse_for_carrier(carrier: Carrier, text: str) -> Any:
    """Read a member of a measure's carrier."""
    if isinstance(carrier, IntervalCarrier):
        return _parse_interval(text)
    if isinstance(carrier, FinitePointCarrier):
        return _parse_labels(text) if text.lstrip().startswith("{") else _parse_points(text).points
    if isinstance(carrier, SparseFunctionCarrier):
        return _parse_points(text)
    if isinstance(carrier, StepFunctionCarrier):
        return _parse_stepfn(text)
    if isinstance(carrier, SequenceCarrier):
        return _parse_sequence(text)
    if isinstance(carrier, CofiniteCarrier):
        return _parse_cofinite(text)
    if isinstance(carrier, TailedCarrier):
        return _parse_tailed(text, carrier.direction)
    if isinstance(carrier, StepRingCarrier):
        return _parse_stepset(text)
    if isinstance(carrier, BoxCarrier):
        return _parse_box(text, carrier.dimension)
    if isinstance(carrier, CharFunctionCarrier):
        labels = _parse_labels(text)
        return _build("labels", lambda: CharFunction(carrier.universe, carrier.universe.mask_of(labels)))
    raise UsageError(f"no literal for members of {carrier.name}")


# ---------------------------------------------------------------------------
# printers


def print_rational(x) -> str:
    if not is_finite(x):
        return "inf" if x > 0 else "-inf"
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def print_point(p) -> str:
    if isinstance(p, tuple):
        return "(" + ",".join(print_rational(c) for c in p) + ")"
    return print_rational(p)


def print_interval(A: IntervalUnion) -> str:
    if not A.components:
        return "{}"
    return " ".join(f"[{print_rational(a)},{print_rational(b)})" for a, b in A.components)


def print_points(f: SparsePointFunction) -> str:
    return "points=" + ",".join(print_point(p) for p in f.support)


def print_stepfn(f: BinaryStepFunction) -> str:
    return f"init={f.v0}; toggles=" + ",".join(print_rational(s) for s in f.toggles)


def print_box(A: BoxUnion) -> str:
    if not A.boxes:
        return "{}"
    return " ".join(
        "x".join(f"[{print_rational(a)},{print_rational(b)})" for a, b in box) for box in A.boxes
    )


def print_locfin(H: LocallyFiniteSet) -> str:
    if H.kind == "lattice":
        return f"lattice scale={print_rational(H.scale)} offset={print_point(H.offset)}"
    points = sorted(H.points)
    if H.dimension == 1:
        return "points=" + ",".join(print_rational(p[0]) for p in points)
    return "points=" + ",".join(print_point(p) for p in points)


def print_family(universe: FiniteUniverse, members, values: dict[int, int] | None = None) -> str:
    lines = ["universe: " + " ".join(str(e) for e in universe.elements)]
    for m in members:
        labels = universe.labels_of(m)
        row = " ".join(str(e) for e in labels) if labels else "{}"
        lines.append(row if values is None else f"{row} = {values[m]}")
    return "\n".join(lines)


def print_sequence(x: BinarySequence) -> str:
    return "prefix=" + ",".join(str(x[n]) for n in range(x.horizon)) + f"; tail={x.tail}"


def print_cofinite(H: CofiniteSet) -> str:
    return "complement=" + ",".join(print_rational(x) for x in sorted(H.complement_members))


def print_tailed(A: TailedPointSet) -> str:
    ray = "none" if A.start is None else str(A.start)
    return f"ray={ray}; toggle=" + ",".join(print_rational(x) for x in sorted(A.exceptions))


def print_stepset(A: StepRingSet) -> str:
    if not A.cells:
        return "{}"
    parts = []
    for (p, at, right), nxt in zip(A.cells, A.cells[1:] + ((None, 0, 0),)):
        if at:
            parts.append("{" + print_rational(p) + "}")
        if right:
            parts.append(f"({print_rational(p)},{print_rational(nxt[0])})")
    return " ".join(parts)


def print_labels(A) -> str:
    if not A:
        return "{}"
    items = sorted(A, key=lambda x: (isinstance(x, str), x if not isinstance(x, str) else 0, str(x)))
    return "{" + " ".join(print_rational(x) if isinstance(x, Fraction) else str(x) for x in items) + "}"


def print_catalog(spec) -> str:
    def value_text(v) -> str:
        if isinstance(v, (Fraction, float)):
            return print_rational(v)
        if isinstance(v, int) and not isinstance(v, bool):
            return str(v)
        if isinstance(v, (tuple, list, frozenset, set)):
            return "{" + ", ".join(value_text(x) for x in v) + "}"
        if isinstance(v, dict):
            return print_catalog(v)
        if hasattr(v, "construction"):
            return print_catalog(v)
        return str(v)

    if isinstance(spec, dict):
        name, params = spec["construction"], spec.get("params", {})
    else:
        name, params = spec.construction, spec.params
    if not params:
        return name
    return f"{name}(" + ", ".join(f"{k}={value_text(v)}" for k, v in params.items()) + ")"


def print_member(carrier: Carrier, A: Any) -> str:
    """Print a member of a carrier in the literal `parse_for_carrier` reads."""
    if isinstance(carrier, IntervalCarrier):
        return print_interval(A)
    if isinstance(carrier, FinitePointCarrier):
        return print_labels(A)
    if isinstance(carrier, SparseFunctionCarrier):
        return print_points(A)
    if isinstance(carrier, StepFunctionCarrier):
        return print_stepfn(A)
    if isinstance(carrier, SequenceCarrier):
        return print_sequence(A)
    if isinstance(carrier, CofiniteCarrier):
        return print_cofinite(A)
    if isinstance(carrier, TailedCarrier):
        return print_tailed(A)
    if isinstance(carrier, StepRingCarrier):
        return print_stepset(A)
    if isinstance(carrier, BoxCarrier):
        return print_box(A)
    if isinstance(carrier, CharFunctionCarrier):
        return print_labels(frozenset(carrier.universe.labels_of(A.bits)))
    return repr(A)


def parse_rational(text: str, kind: str = "rational"):
    """An extended rational: -inf, inf, n or p/q."""
    return _run(kind, ext_rational, text)[0]


def parse_point(text: str):
    """A rational or a tuple of rationals."""
    return _run("point", point, text)[0]
