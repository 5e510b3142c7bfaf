"""The left Lebesgue-Stieltjes binary measure of a step function.

    mu_f([[a, b))) = f(a) xor f(b),   f(-inf) := v0,  f(inf) := f(inf - 0)

extended to finite unions by xor over components.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from b2 import Bit
from carriers import IntervalCarrier
from errors import UsageError
from interval_ring import NEG_INF, POS_INF, EMPTY, ExtendedRational, IntervalUnion, ext, interval, normalize
from set_function import (
    AbstractMeasure,
    CountableReport,
    DisjointFamilyGenerator,
    TailCertificate,
    check_countable_family,
)
from step_function import BinaryStepFunction, sf_eval

MAX_WALK = 100_000


@dataclass(frozen=True)
class LSMeasure:
    f: BinaryStepFunction

    def __call__(self, A: IntervalUnion) -> Bit:
        return ls_eval(self, A)


def endpoint_xor(f: BinaryStepFunction, pairs: Iterable[tuple[ExtendedRational, ExtendedRational]]) -> Bit:
    """xor of f(a) xor f(b) over the given pairs, with no normalization."""
    acc = 0
    for a, b in pairs:
        if a < b:
            acc ^= sf_eval(f, a) ^ sf_eval(f, b)
    return acc


def ls_eval(m: LSMeasure, A: IntervalUnion) -> Bit:
    return endpoint_xor(m.f, A.components)


def ls_cdf(m: LSMeasure, a: ExtendedRational) -> BinaryStepFunction:
    """g(t) = mu([[a, t))): zero up to a, then the toggles of f at or above a."""
    a = ext(a)
    if a == POS_INF:
        raise UsageError("origin must be below +inf")
    return BinaryStepFunction(0, tuple(s for s in m.f.toggles if s >= a))


_CARRIER = IntervalCarrier()


def as_measure(m: LSMeasure) -> AbstractMeasure:
    return AbstractMeasure(f"LS{m.f.toggles}", _CARRIER, m)


def _quiet_from(points, breakpoints: Sequence[Fraction], upward: bool) -> int:
    """First n after which no part [[t_n, t_{n+1})) of the telescope holds a breakpoint."""
    for n in range(MAX_WALK):
        t = points(n)
        if upward and all(s < t for s in breakpoints if s >= points(0)):
            return n
        if not upward and all(s >= t for s in breakpoints if s < points(0)):
            return n
    raise UsageError("telescope does not clear the toggles within the walk limit")


def telescope_family(
    breakpoints: Sequence[Fraction],
    a: ExtendedRational, b: ExtendedRational, ratio: Fraction = Fraction(1, 2)
) -> DisjointFamilyGenerator:
    """Parts [[t_n, t_{n+1})) with t_0 = a and t_n increasing to b.

    `breakpoints` are the only points where the measure of a part can be 1
    (the toggles of f for an LS measure); they fix the tail certificate.

    For finite b the gap to b shrinks by `ratio` at each step; for b = inf
    the points advance by one unit.
    """
    a, b = ext(a), ext(b)
    if a == NEG_INF:
        raise UsageError("use descending_telescope_family for a = -inf")
    if not a < b:
        raise UsageError("telescope needs a < b")
    if b == POS_INF:
        def t(n: int) -> Fraction:
            return a + n
    else:
        def t(n: int) -> Fraction:
            return b - (b - a) * ratio**n
    quiet = _quiet_from(t, [s for s in breakpoints if s < b], upward=True)
    return DisjointFamilyGenerator(
        produce=lambda n: interval(t(n), t(n + 1)),
        union=interval(a, b),
        tail=TailCertificate(quiet, "measure_zero"),
        name=f"telescope[{a},{b})",
    )


def descending_telescope_family(breakpoints: Sequence[Fraction], b: ExtendedRational) -> DisjointFamilyGenerator:
    """Parts [[b - n - 1, b - n)) exhausting [[-inf, b)) for finite b."""
    b = ext(b)
    if b in (NEG_INF, POS_INF):
        raise UsageError("descending telescope needs a finite right end")

    def t(n: int) -> Fraction:
        return b - n

    quiet = _quiet_from(t, breakpoints, upward=False)
    return DisjointFamilyGenerator(
        produce=lambda n: interval(t(n + 1), t(n)),
        union=interval(NEG_INF, b),
        tail=TailCertificate(quiet, "measure_zero"),
        name=f"telescope[-inf,{b})",
    )


def chain_family(breakpoints: Sequence[Fraction], A: IntervalUnion, ratio: Fraction = Fraction(1, 2)) -> DisjointFamilyGenerator:
    """Interleave one telescope per component of a canonical union."""
    if not A.components:
        return DisjointFamilyGenerator(lambda n: EMPTY, EMPTY, TailCertificate(0, "all_empty"), "empty chain")
    parts = []
    for a, b in A.components:
        if a == NEG_INF:
            if b == POS_INF:
                # split the whole line at 0 into two telescopes
                parts.append(descending_telescope_family(breakpoints, 0))
                parts.append(telescope_family(breakpoints, 0, POS_INF, ratio))
            else:
                parts.append(descending_telescope_family(breakpoints, b))
        else:
            parts.append(telescope_family(breakpoints, a, b, ratio))
    k = len(parts)
    return DisjointFamilyGenerator(
        produce=lambda n: parts[n % k].produce(n // k),
        union=A,
        tail=TailCertificate(k * max(p.tail.index for p in parts), "measure_zero"),
        name=f"chain over {len(A)} components",
    )


def ls_structured_countable_check(
    m: LSMeasure, family: DisjointFamilyGenerator, depth: int = 64
) -> CountableReport:
    """Countable additivity of mu_f on one telescoping family."""
    return check_countable_family(as_measure(m), family, max(depth, family.tail.index))


def refine(raw: Iterable[tuple[ExtendedRational, ExtendedRational]], cuts: Iterable[Fraction]) -> list[tuple]:
    """Split every pair at the cut points inside it."""
    cuts = sorted(set(cuts))
    out = []
    for a, b in raw:
        inner = [c for c in cuts if a < c < b]
        bounds = [a, *inner, b]
        out.extend(zip(bounds, bounds[1:]))
    return out


def delta_of(raw: Iterable[tuple]) -> IntervalUnion:
    return normalize(raw, "delta_of")
