"""Integration against binary measures and binary Riemann integrals on R.

The integral of f against mu is mu(supp f). A MeasurableSpace fixes which
supports are admissible: subsets of a finite ring, interval unions (Sym-),
finite subsets of R (R_f) or bounded box unions (U_n).

Riemann integrals are integrals against the finite Boolean measure, so
they exist exactly when the window meets supp f in finitely many points.
For step functions the intersection is computed cell by cell: the
support cells (l, r] are cut by the window [[a, b)).
"""

from dataclasses import dataclass, field
from typing import Any, Callable, Literal, Mapping

from b2 import Bit, parity
from carriers import FinitePointCarrier, IntervalCarrier, MaskCarrier
from derivable import BoxCarrier, BoxUnion, bx_member
from errors import DomainError, IntegrabilityError, PreconditionError, UsageError
from interval_ring import (
    EMPTY,
    NEG_INF,
    POS_INF,
    ExtendedRational,
    IntervalUnion,
    ext,
    interval,
    iv_op,
    member,
    normalize,
)
from set_function import (
    AbstractMeasure,
    Carrier,
    MonotoneFamily,
    TabulatedSetFunction,
    check_ascending_continuity,
    check_descending_continuity,
)
from set_ring import CharFunction, SetRingFamily
from step_function import BinaryStepFunction, SparsePointFunction, support_cells, window_count


@dataclass(frozen=True)
class IndicatorFunction:
    """chi_A for an interval union or a box union."""

    A: IntervalUnion | BoxUnion

    def __call__(self, x) -> Bit:
        if isinstance(self.A, IntervalUnion):
            return member(self.A, x)
        return bx_member(self.A, x)


Function = CharFunction | Mapping | BinaryStepFunction | SparsePointFunction | IndicatorFunction

SpaceKind = Literal["finite", "interval", "points", "box"]


@dataclass(frozen=True)
class MeasurableSpace:
    kind: SpaceKind
    carrier: Carrier = field(compare=False)
    ring: SetRingFamily | None = None
    dimension: int = 1

    @classmethod
    def finite(cls, ring: SetRingFamily) -> "MeasurableSpace":
        return cls("finite", MaskCarrier(ring), ring)

    @classmethod
    def interval(cls) -> "MeasurableSpace":
        return cls("interval", IntervalCarrier())

    @classmethod
    def points(cls) -> "MeasurableSpace":
        return cls("points", FinitePointCarrier())

    @classmethod
    def box(cls, dimension: int) -> "MeasurableSpace":
        return cls("box", BoxCarrier(dimension), dimension=dimension)


SPACES = ("finite", "interval", "points", "box")


# ---------------------------------------------------------------------------
# supports


@dataclass(frozen=True)
class Piece:
    """One connected piece of a window cut with a support cell."""

    lo: ExtendedRational
    lo_closed: bool
    hi: ExtendedRational
    hi_closed: bool

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi


def window_pieces(f: BinaryStepFunction, A: IntervalUnion) -> list[Piece]:
    """A cap supp f, as pieces of [[a, b)) cap (l, r]."""
    pieces = []
    for a, b in A.components:
        for l, r in support_cells(f):
            lo, lo_closed = (a, True) if a > l else (l, l == NEG_INF)
            # r = inf means the open ray (l, inf)
            if b <= r:
                hi, hi_closed = b, False
            else:
                hi, hi_closed = r, True
            if lo < hi or (lo == hi and lo_closed and hi_closed):
                pieces.append(Piece(lo, lo_closed, hi, hi_closed))
    return pieces


def _pieces_as_union(pieces: list[Piece]) -> IntervalUnion | None:
    if all(p.lo_closed and not p.hi_closed and not p.is_point for p in pieces):
        return normalize([(p.lo, p.hi) for p in pieces])
    return None


def _finite_support(f: Function) -> frozenset | None:
    if isinstance(f, SparsePointFunction):
        if f.dimension != 1:
            return None
        return f.points
    if isinstance(f, BinaryStepFunction):
        return frozenset() if f.v0 == 0 and not f.toggles else None
    if isinstance(f, IndicatorFunction):
        return frozenset() if not f.A else None
    return None


def _finite_bits(f: Function, space: MeasurableSpace) -> int | None:
    if isinstance(f, CharFunction):
        return f.bits
    if isinstance(f, Mapping):
        return space.ring.universe.mask_of(x for x, v in f.items() if v)
    return None


def support_in(f: Function, space: MeasurableSpace) -> Any | None:
    """supp f as an element of the space's ring, or None when it is not one."""
    if space.kind == "finite":
        bits = _finite_bits(f, space)
        return bits if bits is not None and bits in space.ring else None
    if space.kind == "points":
        return _finite_support(f)
    if space.kind == "interval":
        if isinstance(f, IndicatorFunction) and isinstance(f.A, IntervalUnion):
            return f.A
        if isinstance(f, BinaryStepFunction):
            return _pieces_as_union(window_pieces(f, interval(NEG_INF, POS_INF)))
        if isinstance(f, SparsePointFunction):
            return EMPTY if not f.support else None
        return None
    if isinstance(f, IndicatorFunction) and isinstance(f.A, BoxUnion):
        return f.A if f.A.dimension == space.dimension else None
    if isinstance(f, SparsePointFunction) and not f.support:
        return BoxUnion(space.dimension)
    return None


def is_measurable(f: Function, space: MeasurableSpace) -> Bit:
    return int(support_in(f, space) is not None)


@dataclass(frozen=True)
class MeasurableFunction:
    f: Any
    space: MeasurableSpace
    support: Any = field(init=False, compare=False)

    def __post_init__(self):
        s = support_in(self.f, self.space)
        if s is None:
            raise IntegrabilityError(f"supp f is not a member of the {self.space.kind} ring")
        object.__setattr__(self, "support", s)


def _measurable(f, space: MeasurableSpace | None) -> MeasurableFunction:
    if isinstance(f, MeasurableFunction):
        return f
    if space is None:
        raise UsageError("a raw function needs its measurable space")
    return MeasurableFunction(f, space)


def _cap_with(A: Any, f: Function, space: MeasurableSpace) -> Any | None:
    """A cap supp f, computed pointwise when supp f itself is not in the ring."""
    if isinstance(f, MeasurableFunction):
        f = f.f
    s = support_in(f, space)
    if s is not None:
        return space.carrier.cap(A, s)
    if space.kind == "finite":
        bits = _finite_bits(f, space)
        return None if bits is None else A & bits
    if space.kind == "points":
        return frozenset(x for x in A if f(x))
    if space.kind == "interval" and isinstance(f, BinaryStepFunction):
        return _pieces_as_union(window_pieces(f, A))
    if space.kind == "interval" and isinstance(f, SparsePointFunction):
        return EMPTY if not f.restrict(A).support else None
    return None


# ---------------------------------------------------------------------------
# integrals


def integral(f: MeasurableFunction, mu: Callable[[Any], Bit], space: MeasurableSpace | None = None) -> Bit:
    """mu(supp f)."""
    return mu(_measurable(f, space).support)


def integral_on(A: Any, f: Any, mu: Callable[[Any], Bit], space: MeasurableSpace | None = None) -> Bit:
    """mu(A cap supp f), provided A cap supp f is in the ring."""
    space = f.space if isinstance(f, MeasurableFunction) else space
    if space is None:
        raise UsageError("a raw function needs its measurable space")
    if not space.carrier.contains(A):
        raise DomainError(f"A is not a member of the {space.kind} ring")
    S = _cap_with(A, f, space)
    if S is None or not space.carrier.contains(S):
        raise IntegrabilityError(f"A cap supp f = {S!r} is not a member of the {space.kind} ring")
    return mu(S)


def ae_equal(f: MeasurableFunction, g: MeasurableFunction, mu: Callable[[Any], Bit]) -> Bit:
    """1 iff mu(supp f delta supp g) = 0."""
    if f.space != g.space:
        raise UsageError("f and g live on different spaces")
    carrier = f.space.carrier
    result = 1 ^ mu(carrier.delta(f.support, g.support))
    if result and mu(f.support) != mu(g.support):
        raise PreconditionError("mu is not additive: a.e. equal functions got different integrals")
    return result


def f_mu(f: MeasurableFunction, mu: Callable[[Any], Bit]) -> Callable[[Any], Bit]:
    """(f . mu)(A) = mu(A cap supp f), on the same ring as mu."""
    space = f.space
    cap = space.carrier.cap
    if isinstance(mu, TabulatedSetFunction):
        return TabulatedSetFunction.of(mu.ring, lambda m: mu(cap(m, f.support)))
    return AbstractMeasure("f.mu", space.carrier, lambda A: mu(cap(A, f.support)))


@dataclass(frozen=True)
class FunctionFamily:
    """f_0, f_1, ...; from `tail` on the supports no longer change."""

    produce: Callable[[int], Any] = field(compare=False)
    tail: int
    name: str = ""


@dataclass(frozen=True)
class ConvergenceReport:
    integrals: tuple[Bit, ...]
    target_integral: Bit
    converges: bool


ConvergenceMode = Literal["increasing", "decreasing", "in_measure"]


def convergence_check(
    family: FunctionFamily,
    mode: ConvergenceMode,
    target: MeasurableFunction,
    mu: Callable[[Any], Bit],
    depth: int,
) -> ConvergenceReport:
    """Monotone or in-measure convergence of f_n to target, and of their integrals."""
    space = target.space
    measure = AbstractMeasure("mu", space.carrier, mu)

    def supp(n: int):
        return _measurable(family.produce(n), space).support

    if mode in ("increasing", "decreasing"):
        mono = MonotoneFamily(supp, target.support, family.tail, family.name)
        check = check_ascending_continuity if mode == "increasing" else check_descending_continuity
        report = check(measure, mono, max(depth, family.tail + 1))
        return ConvergenceReport(report.values, report.measure_of_limit, report.converges)
    if mode != "in_measure":
        raise UsageError(f"unknown convergence mode {mode!r}")
    depth = max(depth, family.tail + 1)
    supports = [supp(n) for n in range(depth)]
    distances = [mu(space.carrier.delta(S, target.support)) for S in supports]
    integrals = tuple(mu(S) for S in supports)
    target_integral = mu(target.support)
    settled = all(d == 0 for d in distances[family.tail :])
    converged = all(v == target_integral for v in integrals[family.tail :])
    return ConvergenceReport(integrals, target_integral, settled and converged)


# ---------------------------------------------------------------------------
# Riemann integrals on R


def riemann_integrable(f: Function, A: IntervalUnion) -> Bit:
    """1 iff A cap supp f is finite."""
    if isinstance(f, SparsePointFunction):
        return int(f.dimension == 1)
    if isinstance(f, BinaryStepFunction):
        return int(all(p.is_point for p in window_pieces(f, A)))
    if isinstance(f, IndicatorFunction) and isinstance(f.A, IntervalUnion):
        return int(not iv_op("cap", A, f.A))
    return 0


def riemann_integral(f: Function, A: IntervalUnion) -> Bit:
    """Parity of |A cap supp f|: the xor of f over A."""
    if not riemann_integrable(f, A):
        raise IntegrabilityError("A cap supp f is infinite")
    if isinstance(f, SparsePointFunction):
        return parity(sum(window_count(f.support, a, b) for a, b in A.components))
    if isinstance(f, BinaryStepFunction):
        return parity(len(window_pieces(f, A)))
    return 0


def left_integral(f: Function, a: ExtendedRational, b: ExtendedRational) -> Bit:
    return riemann_integral(f, interval(a, b))


def full_integral(f: Function) -> Bit:
    """The integral over all of R; needs a finite support."""
    if _finite_support(f) is None:
        raise IntegrabilityError("full integrals need a finitely supported function")
    return riemann_integral(f, interval(NEG_INF, POS_INF))


def left_primitive(f: SparsePointFunction, a: ExtendedRational) -> BinaryStepFunction:
    """F(t) = integral of f over [[a, t)): toggles at the support points from a on."""
    a = ext(a)
    if a == POS_INF:
        raise UsageError("origin must be below +inf")
    if f.dimension != 1:
        raise DomainError("primitives take functions on R")
    points = [ext(x[0] if isinstance(x, tuple) else x) for x in f.support]
    return BinaryStepFunction(0, tuple(x for x in points if x >= a))


def dual_left_integral(zeros: SparsePointFunction, a: ExtendedRational, b: ExtendedRational) -> Bit:
    """xnor of f over [[a, b)) for the function that is 1 off the finite set `zeros`."""
    if zeros.dimension != 1:
        raise DomainError("dual integrals take functions on R")
    return 1 ^ parity(window_count(zeros.support, ext(a), ext(b)))


def indefinite_integral(f: Function) -> AbstractMeasure:
    """A -> integral of f over A, for A with finite endpoints."""
    return AbstractMeasure("indefinite integral", IntervalCarrier(finite_only=True), lambda A: riemann_integral(f, A))

