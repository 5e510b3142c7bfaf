"""Example measures behind one registry, and the two additive functions
that fail countable additivity.

`catalog_build(spec)` turns a CatalogSpec into an AbstractMeasure on the
carrier the construction is defined on. `catalog_suite(spec)` gives the
structured disjoint families a construction is certified on, and
`certify_catalog` runs sampling plus every family of the suite.
"""

from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
import math
from typing import Any, Callable, Hashable, Iterable, Literal, Mapping

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from b2 import Bit, binary_law, check_bit, parity
from carriers import (
    GRID,
    FinitePointCarrier,
    IntervalCarrier,
    SparseFunctionCarrier,
    StepFunctionCarrier,
)
from errors import DomainError, StructuralError, UsageError
from interval_ring import EMPTY, NEG_INF, POS_INF, ext, interval, is_finite, member, normalize, sup_is_infinite
from ls_measure import chain_family, descending_telescope_family, telescope_family
from sampling import random_label_set, random_rational
from set_function import (
    AbstractMeasure,
    Carrier,
    CountableReport,
    DisjointFamilyGenerator,
    SampleReport,
    TailCertificate,
    check_countable_family,
    finite_family,
    sample_additivity,
    sample_additivity_star,
)
from set_ring import CharFunction, FiniteUniverse
from step_function import SparsePointFunction, indicator_oc, sf_left_limit, window_count

# ---------------------------------------------------------------------------
# the sequence space S2


@dataclass(frozen=True)
class BinarySequence:
    """An eventually constant sequence of bits: `tail` everywhere except `overrides`."""

    overrides: tuple[tuple[int, Bit], ...] = ()
    tail: Bit = 0

    def __post_init__(self):
        check_bit(self.tail)
        previous = -1
        for n, v in self.overrides:
            if not (isinstance(n, int) and n > previous):
                raise UsageError("override indices must be increasing naturals")
            if check_bit(v) == self.tail:
                raise UsageError(f"override at {n} repeats the tail value")
            previous = n

    @classmethod
    def of(cls, values: Mapping[int, Bit], tail: Bit = 0) -> "BinarySequence":
        return cls(tuple(sorted((n, v) for n, v in values.items() if v != tail)), tail)

    def __getitem__(self, n: int) -> Bit:
        for k, v in self.overrides:
            if k == n:
                return v
        return self.tail

    @property
    def horizon(self) -> int:
        """First index from which the sequence is constant."""
        return self.overrides[-1][0] + 1 if self.overrides else 0

    def combine(self, law: str, other: "BinarySequence") -> "BinarySequence":
        op = binary_law(law)
        h = max(self.horizon, other.horizon)
        return BinarySequence.of({n: op(self[n], other[n]) for n in range(h)}, op(self.tail, other.tail))


ZEROS = BinarySequence()
ONES = BinarySequence(tail=1)


def basis(n: int) -> BinarySequence:
    """e^(n): a single 1 at position n."""
    return BinarySequence(((n, 1),))


SequenceDomain = Literal["S2_0", "S2_c"]


class SequenceCarrier(Carrier[BinarySequence]):
    """S2_0 (finitely many ones) or S2_c (eventually constant)."""

    def __init__(self, domain: SequenceDomain = "S2_c"):
        if domain not in ("S2_0", "S2_c"):
            raise UsageError(f"unknown sequence domain {domain!r}")
        self.domain = domain
        self.name = domain

    def contains(self, A: Any) -> bool:
        return isinstance(A, BinarySequence) and (self.domain == "S2_c" or A.tail == 0)

    def empty(self) -> BinarySequence:
        return ZEROS

    def delta(self, A, B):
        return A.combine("xor", B)

    def cap(self, A, B):
        return A.combine("and", B)

    def cup(self, A, B):
        return A.combine("or", B)

    def sample(self, rng: np.random.Generator) -> BinarySequence:
        tail = int(rng.integers(0, 2)) if self.domain == "S2_c" else 0
        values = {int(n): int(rng.integers(0, 2)) for n in rng.choice(8, size=int(rng.integers(0, 6)), replace=False)}
        return BinarySequence.of(values, tail)


def limit_measure_eval(x: BinarySequence) -> Bit:
    """lim x_n, read off the tail."""
    return x.tail


# ---------------------------------------------------------------------------
# cofinite sets, the (theta, cup) ring R_f*


@dataclass(frozen=True)
class CofiniteSet:
    complement_members: frozenset = frozenset()

    def __contains__(self, x: Hashable) -> bool:
        return x not in self.complement_members


class CofiniteCarrier(Carrier[CofiniteSet]):
    name = "R_f*"
    law_pair = "theta_cup"

    def contains(self, A: Any) -> bool:
        return isinstance(A, CofiniteSet)

    def empty(self):
        raise DomainError("the ring of cofinite sets has no empty member")

    def delta(self, A, B):
        raise DomainError("the symmetric difference of cofinite sets is finite")

    def cap(self, A, B):
        return CofiniteSet(A.complement_members | B.complement_members)

    def cup(self, A, B):
        return CofiniteSet(A.complement_members & B.complement_members)

    def theta(self, A, B):
        return CofiniteSet(A.complement_members ^ B.complement_members)

    def unit(self) -> CofiniteSet:
        return CofiniteSet()

    def covering(self, A: CofiniteSet, B: CofiniteSet) -> CofiniteSet:
        """Shrink the complement of B so that A v B is the whole line."""
        return CofiniteSet(B.complement_members - A.complement_members)

    def sample(self, rng: np.random.Generator) -> CofiniteSet:
        return CofiniteSet(random_label_set(rng, GRID))


# ---------------------------------------------------------------------------
# Inf_f and Sup_f: a ray of integers xor finitely many exceptions


@dataclass(frozen=True)
class TailedPointSet:
    """Points of Q: (n in Z, n >= start) for direction "up", (n <= start) for "down",
    toggled at the finite set `exceptions`. `start` None means no ray.

    Built through `of`, which picks the canonical start.
    """

    direction: Literal["up", "down"]
    exceptions: frozenset[Fraction] = frozenset()
    start: int | None = None

    @classmethod
    def of(
        cls, direction: str, exceptions: Iterable = (), start: int | None = None
    ) -> "TailedPointSet":
        if direction not in ("up", "down"):
            raise UsageError(f"unknown ray direction {direction!r}")
        ex = {ext(x) for x in exceptions}
        if any(not is_finite(x) for x in ex):
            raise UsageError("points must be finite")
        if start is not None:
            step = 1 if direction == "up" else -1
            # skip members missing from the ray's start, then absorb members just outside it
            while Fraction(start) in ex:
                ex.discard(Fraction(start))
                start += step
            while Fraction(start - step) in ex:
                ex.discard(Fraction(start - step))
                start -= step
        return cls(direction, frozenset(ex), start)

    def in_ray(self, x: Fraction) -> bool:
        if self.start is None or x.denominator != 1:
            return False
        return x >= self.start if self.direction == "up" else x <= self.start

    def __contains__(self, x: Fraction | int) -> bool:
        x = Fraction(x)
        return (x in self.exceptions) != self.in_ray(x)


def tailed_combine(law: str, A: TailedPointSet, B: TailedPointSet) -> TailedPointSet:
    if A.direction != B.direction:
        raise StructuralError("cannot combine upward and downward rays")
    op = binary_law(law)
    starts = [s for s in (A.start, B.start) if s is not None]
    candidates = set(A.exceptions | B.exceptions)
    if starts:
        candidates.update(Fraction(n) for n in range(min(starts), max(starts) + 1))
    far = op(int(A.start is not None), int(B.start is not None))
    start = None
    if far:
        start = max(starts) if A.direction == "up" else min(starts)
    ray = TailedPointSet(A.direction, frozenset(), start)
    exceptions = [x for x in candidates if op(int(x in A), int(x in B)) != int(ray.in_ray(x))]
    return TailedPointSet.of(A.direction, exceptions, start)


class TailedCarrier(Carrier[TailedPointSet]):
    """Inf_f ("up") or Sup_f ("down") restricted to ray-plus-exceptions sets."""

    def __init__(self, direction: Literal["up", "down"]):
        self.direction = direction
        self.name = "Inf_f" if direction == "up" else "Sup_f"

    def contains(self, A: Any) -> bool:
        return isinstance(A, TailedPointSet) and A.direction == self.direction

    def empty(self) -> TailedPointSet:
        return TailedPointSet(self.direction)

    def is_empty(self, A) -> bool:
        return A.start is None and not A.exceptions

    def delta(self, A, B):
        return tailed_combine("xor", A, B)

    def cap(self, A, B):
        return tailed_combine("and", A, B)

    def cup(self, A, B):
        return tailed_combine("or", A, B)

    def sample(self, rng: np.random.Generator) -> TailedPointSet:
        start = None if rng.random() < 0.3 else int(rng.integers(-4, 5))
        return TailedPointSet.of(self.direction, random_label_set(rng, GRID), start)


def count_below(A: TailedPointSet, alpha: Fraction) -> int:
    """Parity-faithful count of members below alpha: exceptions and ray counted apart."""
    below = sum(1 for x in A.exceptions if x < alpha)
    if A.start is not None:
        below += max(0, math.ceil(alpha) - A.start)
    return below


def count_above(A: TailedPointSet, beta: Fraction) -> int:
    above = sum(1 for x in A.exceptions if x > beta)
    if A.start is not None:
        above += max(0, A.start - math.floor(beta))
    return above


# ---------------------------------------------------------------------------
# the step ring: bounded sets built from open intervals and points


@dataclass(frozen=True)
class StepRingSet:
    """A bounded set that is constant on the open gaps between breakpoints.

    `cells` holds (p, value at p, value on the gap right of p) for increasing
    breakpoints p. The set is empty left of the first breakpoint and right of
    the last, and no breakpoint is redundant.
    """

    cells: tuple[tuple[Fraction, Bit, Bit], ...] = ()
    _points: tuple[Fraction, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_points", tuple(p for p, _, _ in self.cells))
        if any(not a < b for a, b in zip(self._points, self._points[1:])):
            raise UsageError("breakpoints must be strictly increasing")
        if self.cells and self.cells[-1][2]:
            raise UsageError("step ring sets are bounded on the right")
        left = 0
        for p, at, right in self.cells:
            check_bit(at)
            check_bit(right)
            if left == at == right:
                raise UsageError(f"redundant breakpoint {p}")
            left = right

    @classmethod
    def of_cells(cls, raw: Iterable[tuple[Fraction, Bit, Bit]]) -> "StepRingSet":
        cells, left = [], 0
        for p, at, right in sorted(raw):
            if not left == at == right:
                cells.append((p, at, right))
            left = right
        return cls(tuple(cells))

    def value_at(self, x: Fraction) -> Bit:
        i = bisect_right(self._points, x) - 1
        if i < 0:
            return 0
        p, at, right = self.cells[i]
        return at if p == x else right

    def value_right(self, x: Fraction) -> Bit:
        i = bisect_right(self._points, x) - 1
        return 0 if i < 0 else self.cells[i][2]

    def __contains__(self, x: Fraction) -> bool:
        return bool(self.value_at(x))

    def combine(self, law: str, other: "StepRingSet") -> "StepRingSet":
        op = binary_law(law)
        points = sorted(set(self._points) | set(other._points))
        return StepRingSet.of_cells(
            (p, op(self.value_at(p), other.value_at(p)), op(self.value_right(p), other.value_right(p)))
            for p in points
        )


def span(a, b, left_closed: bool = True, right_closed: bool = False) -> StepRingSet:
    """The interval from a to b with the chosen closed ends."""
    a, b = ext(a), ext(b)
    if not (is_finite(a) and is_finite(b)):
        raise UsageError("step ring sets are bounded")
    if a > b or (a == b and not (left_closed and right_closed)):
        return StepRingSet()
    if a == b:
        return StepRingSet(((a, 1, 0),))
    return StepRingSet.of_cells(((a, int(left_closed), 1), (b, int(right_closed), 0)))


def step_points(points: Iterable) -> StepRingSet:
    return StepRingSet.of_cells((ext(p), 1, 0) for p in set(points))


def euler_parity(A: StepRingSet) -> Bit:
    """Parity of points plus open gaps: the compactly supported Euler characteristic mod 2."""
    return parity(sum(at + right for _, at, right in A.cells))


class StepRingCarrier(Carrier[StepRingSet]):
    name = "S"

    def contains(self, A: Any) -> bool:
        return isinstance(A, StepRingSet)

    def empty(self) -> StepRingSet:
        return StepRingSet()

    def delta(self, A, B):
        return A.combine("xor", B)

    def cap(self, A, B):
        return A.combine("and", B)

    def cup(self, A, B):
        return A.combine("or", B)

    def sample(self, rng: np.random.Generator) -> StepRingSet:
        out = StepRingSet()
        for _ in range(int(rng.integers(0, 4))):
            a = random_rational(rng, -5, 5)
            b = a + Fraction(int(rng.integers(0, 5)), 2)
            piece = span(a, b, bool(rng.integers(0, 2)), bool(rng.integers(0, 2)))
            out = out.combine("xor", piece)
        return out


# ---------------------------------------------------------------------------
# functions on a finite universe, for point evaluation


class CharFunctionCarrier(Carrier[CharFunction]):
    """Bit functions on a finite universe with pointwise laws."""

    def __init__(self, universe: FiniteUniverse):
        self.universe = universe
        self.name = f"B2^{len(universe)}"

    def contains(self, A: Any) -> bool:
        return isinstance(A, CharFunction) and A.universe == self.universe

    def empty(self) -> CharFunction:
        return CharFunction(self.universe, 0)

    def delta(self, A, B):
        return CharFunction(self.universe, A.bits ^ B.bits)

    def cap(self, A, B):
        return CharFunction(self.universe, A.bits & B.bits)

    def cup(self, A, B):
        return CharFunction(self.universe, A.bits | B.bits)

    def sample(self, rng: np.random.Generator) -> CharFunction:
        return CharFunction(self.universe, int(rng.integers(0, self.universe.full + 1)))


# ---------------------------------------------------------------------------
# the registry

Construction = Literal[
    "null",
    "restriction",
    "dirac",
    "dirac_sum",
    "coord",
    "coord_sum",
    "limit",
    "finite_boolean",
    "inferiorly_finite",
    "superiorly_finite",
    "left_limit_eval",
    "sym_sup",
    "indicator_integral",
    "step_ring_parity",
    "cofinite_star",
    "point_eval",
]

Claim = Literal["measure", "measure*", "additive"]


class CatalogSpec(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    construction: Construction = Field(..., description="Registered construction name")
    params: dict[str, Any] = Field(default_factory=dict, description="Construction parameters")


@dataclass(frozen=True)
class CatalogEntry:
    construction: str
    carrier: str
    claim: str
    params: str
    summary: str


CATALOG: tuple[CatalogEntry, ...] = (
    CatalogEntry("null", "any", "measure", "carrier", "the zero function"),
    CatalogEntry("restriction", "base", "measure", "base, set", "B -> mu(A cap B)"),
    CatalogEntry("dirac", "Sym- | R_f", "measure", "x0, carrier, universe", "1 iff x0 in A"),
    CatalogEntry("dirac_sum", "Sym- | R_f", "measure", "H, carrier, universe", "parity of |A cap H|"),
    CatalogEntry("coord", "S2_0 | S2_c", "measure", "k, domain", "the k-th coordinate"),
    CatalogEntry("coord_sum", "S2_0 | S2_c", "measure", "H, domain", "xor of the coordinates in H"),
    CatalogEntry("limit", "S2_0 | S2_c", "measure on S2_0, additive on S2_c", "domain", "lim x_n"),
    CatalogEntry("finite_boolean", "R_f", "measure", "universe", "parity of |A|"),
    CatalogEntry("inferiorly_finite", "Inf_f", "measure", "alpha", "parity of |A below alpha|"),
    CatalogEntry("superiorly_finite", "Sup_f", "measure", "beta", "parity of |A above beta|"),
    CatalogEntry("left_limit_eval", "step functions", "measure", "t", "f(t - 0)"),
    CatalogEntry("sym_sup", "Sym-", "measure", "", "1 iff sup A = inf"),
    CatalogEntry("indicator_integral", "I_inf", "measure", "a, b", "parity of |supp f in [[a, b))|"),
    CatalogEntry("step_ring_parity", "S", "additive", "", "Euler characteristic mod 2"),
    CatalogEntry("cofinite_star", "R_f*", "measure*", "", "not parity of |complement H|"),
    CatalogEntry("point_eval", "B2^X", "measure", "x0, universe", "f(x0)"),
)


def catalog_list() -> tuple[CatalogEntry, ...]:
    return CATALOG


def _expect(params: Mapping[str, Any], allowed: Iterable[str], required: Iterable[str] = ()) -> None:
    allowed = set(allowed)
    unknown = set(params) - allowed
    if unknown:
        raise UsageError(f"unknown parameters {sorted(unknown)}, allowed {sorted(allowed)}")
    missing = [k for k in required if k not in params]
    if missing:
        raise UsageError(f"missing parameters {missing}")


def _rational(value: Any, name: str, allow_inf: bool = False):
    x = ext(value)
    if not allow_inf and not is_finite(x):
        raise UsageError(f"{name} must be a finite rational")
    return x


def _points(value: Any, name: str) -> tuple:
    if isinstance(value, (str, bytes)) or not isinstance(value, Iterable):
        raise UsageError(f"{name} must be a finite collection of points")
    return tuple(value)


def _natural(value: Any, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, Fraction)) or value != int(value) or value < 0:
        raise UsageError(f"{name} must be a natural number, got {value!r}")
    return int(value)


def _universe(params: Mapping[str, Any]) -> FiniteUniverse | None:
    if "universe" not in params:
        return None
    return FiniteUniverse.of(_points(params["universe"], "universe"))


def _point_carrier(params: Mapping[str, Any]) -> Carrier:
    kind = params.get("carrier", "interval")
    if kind == "interval":
        if "universe" in params:
            raise UsageError("a universe only applies to the finite carrier")
        return IntervalCarrier()
    if kind == "finite":
        universe = _universe(params)
        return FinitePointCarrier(None if universe is None else universe.elements)
    raise UsageError(f"unknown point carrier {kind!r}, expected interval or finite")


def as_spec(value: Any) -> CatalogSpec:
    """Accept a CatalogSpec, a construction name, or a dict."""
    if isinstance(value, CatalogSpec):
        return value
    if isinstance(value, str):
        return CatalogSpec(construction=value)
    if isinstance(value, Mapping):
        return CatalogSpec.model_validate(value)
    raise UsageError(f"not a catalog spec: {value!r}")


def _sequence_domain(params: Mapping[str, Any], default: SequenceDomain) -> SequenceCarrier:
    return SequenceCarrier(params.get("domain", default))


def _build_null(p):
    _expect(p, ("carrier",))
    carrier = _carrier_by_name(p.get("carrier", "Sym-"))
    return AbstractMeasure("null", carrier, lambda A: 0)


def _carrier_by_name(name: str) -> Carrier:
    table: dict[str, Callable[[], Carrier]] = {
        "Sym-": IntervalCarrier,
        "interval": IntervalCarrier,
        "Sym'": lambda: IntervalCarrier(finite_only=True),
        "R_f": FinitePointCarrier,
        "finite": FinitePointCarrier,
        "step": StepFunctionCarrier,
        "I_inf": SparseFunctionCarrier,
        "S2_0": lambda: SequenceCarrier("S2_0"),
        "S2_c": lambda: SequenceCarrier("S2_c"),
        "Inf_f": lambda: TailedCarrier("up"),
        "Sup_f": lambda: TailedCarrier("down"),
        "S": StepRingCarrier,
    }
    try:
        return table[name]()
    except KeyError:
        raise UsageError(f"unknown carrier {name!r}, expected one of {', '.join(table)}")


def _build_restriction(p):
    _expect(p, ("base", "set"), ("base", "set"))
    base = catalog_build(as_spec(p["base"]))
    A = p["set"]
    if not base.carrier.contains(A):
        raise UsageError(f"restriction set is not in {base.carrier.name}")
    carrier = base.carrier
    return AbstractMeasure(f"{base.name}|A", carrier, lambda B: base(carrier.cap(A, B)))


def _build_dirac(p):
    _expect(p, ("x0", "carrier", "universe"), ("x0",))
    carrier = _point_carrier(p)
    if isinstance(carrier, IntervalCarrier):
        x0 = _rational(p["x0"], "x0")
        return AbstractMeasure(f"dirac({x0})", carrier, lambda A: member(A, x0))
    x0 = p["x0"] if carrier.universe is not None else _rational(p["x0"], "x0")
    if carrier.universe is not None and x0 not in carrier.universe:
        raise UsageError(f"x0 = {x0!r} is not in the universe")
    return AbstractMeasure(f"dirac({x0})", carrier, lambda A: int(x0 in A))


def _build_dirac_sum(p):
    _expect(p, ("H", "carrier", "universe"), ("H",))
    carrier = _point_carrier(p)
    if isinstance(carrier, IntervalCarrier):
        H = tuple(sorted({_rational(x, "H") for x in _points(p["H"], "H")}))
        return AbstractMeasure(
            f"dirac_sum{H}", carrier, lambda A: parity(sum(member(A, x) for x in H))
        )
    if carrier.universe is None:
        H = frozenset(_rational(x, "H") for x in _points(p["H"], "H"))
    else:
        H = frozenset(_points(p["H"], "H"))
        if not H <= carrier.universe:
            raise UsageError("H must lie in the universe")
    return AbstractMeasure(f"dirac_sum{sorted(H, key=repr)}", carrier, lambda A: parity(len(A & H)))


def _build_coord(p):
    _expect(p, ("k", "domain"), ("k",))
    k = _natural(p["k"], "k")
    return AbstractMeasure(f"coord({k})", _sequence_domain(p, "S2_c"), lambda x: x[k])


def _build_coord_sum(p):
    _expect(p, ("H", "domain"), ("H",))
    H = tuple(sorted({_natural(k, "H") for k in _points(p["H"], "H")}))
    return AbstractMeasure(
        f"coord_sum{H}", _sequence_domain(p, "S2_c"), lambda x: parity(sum(x[k] for k in H))
    )


def _build_limit(p):
    _expect(p, ("domain",))
    carrier = _sequence_domain(p, "S2_0")
    return AbstractMeasure(f"limit on {carrier.name}", carrier, limit_measure_eval)


def _build_finite_boolean(p):
    _expect(p, ("universe",))
    universe = _universe(p)
    carrier = FinitePointCarrier(None if universe is None else universe.elements)
    return AbstractMeasure("finite_boolean", carrier, lambda A: parity(len(A)))


def _build_inferiorly_finite(p):
    _expect(p, ("alpha",), ("alpha",))
    alpha = _rational(p["alpha"], "alpha")
    return AbstractMeasure(
        f"inferiorly_finite({alpha})", TailedCarrier("up"), lambda A: parity(count_below(A, alpha))
    )


def _build_superiorly_finite(p):
    _expect(p, ("beta",), ("beta",))
    beta = _rational(p["beta"], "beta")
    return AbstractMeasure(
        f"superiorly_finite({beta})", TailedCarrier("down"), lambda A: parity(count_above(A, beta))
    )


def _build_left_limit_eval(p):
    _expect(p, ("t",), ("t",))
    t = _rational(p["t"], "t")
    return AbstractMeasure(f"left_limit({t})", StepFunctionCarrier(), lambda f: sf_left_limit(f, t))


def _build_sym_sup(p):
    _expect(p, ())
    return AbstractMeasure("sym_sup", IntervalCarrier(), sup_is_infinite)


def _window(p) -> tuple:
    a = _rational(p.get("a", "-inf"), "a", allow_inf=True)
    b = _rational(p.get("b", "inf"), "b", allow_inf=True)
    if a == POS_INF or b == NEG_INF:
        raise UsageError("window must meet R")
    return a, b


def _build_indicator_integral(p):
    _expect(p, ("a", "b"))
    a, b = _window(p)

    def integral(f: SparsePointFunction) -> Bit:
        if f.dimension != 1:
            raise DomainError("indicator integrals take functions on R")
        return parity(window_count(f.support, a, b))

    return AbstractMeasure(f"indicator_integral[{a},{b})", SparseFunctionCarrier(), integral)


def _build_step_ring_parity(p):
    _expect(p, ())
    return AbstractMeasure("step_ring_parity", StepRingCarrier(), euler_parity)


def _build_cofinite_star(p):
    _expect(p, ())
    return AbstractMeasure(
        "cofinite_star", CofiniteCarrier(), lambda H: 1 ^ parity(len(H.complement_members))
    )


def _build_point_eval(p):
    _expect(p, ("x0", "universe"), ("x0", "universe"))
    universe = _universe(p)
    x0 = p["x0"]
    if x0 not in universe.elements:
        raise UsageError(f"x0 = {x0!r} is not in the universe")
    return AbstractMeasure(f"point_eval({x0!r})", CharFunctionCarrier(universe), lambda f: f(x0))


_BUILDERS: dict[str, Callable[[Mapping[str, Any]], AbstractMeasure]] = {
    "null": _build_null,
    "restriction": _build_restriction,
    "dirac": _build_dirac,
    "dirac_sum": _build_dirac_sum,
    "coord": _build_coord,
    "coord_sum": _build_coord_sum,
    "limit": _build_limit,
    "finite_boolean": _build_finite_boolean,
    "inferiorly_finite": _build_inferiorly_finite,
    "superiorly_finite": _build_superiorly_finite,
    "left_limit_eval": _build_left_limit_eval,
    "sym_sup": _build_sym_sup,
    "indicator_integral": _build_indicator_integral,
    "step_ring_parity": _build_step_ring_parity,
    "cofinite_star": _build_cofinite_star,
    "point_eval": _build_point_eval,
}


def catalog_build(spec: CatalogSpec) -> AbstractMeasure:
    return _BUILDERS[spec.construction](spec.params)


def claim_of(spec: CatalogSpec) -> Claim:
    if spec.construction == "limit":
        return "measure" if spec.params.get("domain", "S2_0") == "S2_0" else "additive"
    if spec.construction == "step_ring_parity":
        return "additive"
    if spec.construction == "cofinite_star":
        return "measure*"
    return "measure"


def star_transport(mu_star: AbstractMeasure) -> AbstractMeasure:
    """A -> not mu*(complement A) on finite sets: turns measure* checks into measure checks."""
    return AbstractMeasure(
        f"transport of {mu_star.name}",
        FinitePointCarrier(),
        lambda A: 1 ^ mu_star(CofiniteSet(A)),
    )


# ---------------------------------------------------------------------------
# structured family suites


def _breakpoints(spec: CatalogSpec) -> tuple[Fraction, ...]:
    p = spec.params
    if spec.construction == "dirac":
        return (_rational(p["x0"], "x0"),)
    if spec.construction == "dirac_sum":
        return tuple(sorted({_rational(x, "H") for x in p["H"]}))
    if spec.construction == "restriction":
        return _breakpoints(as_spec(p["base"]))
    return ()


def _interval_suite(
    spec: CatalogSpec, carrier: IntervalCarrier, unbounded_above: bool
) -> list[DisjointFamilyGenerator]:
    bp = _breakpoints(spec)
    suite = [
        telescope_family(bp, 0, 1),
        telescope_family(bp, -3, 2, Fraction(1, 3)),
        chain_family(bp, normalize([(-2, -1), (0, 3)])),
    ]
    if carrier.finite_only:
        return suite
    suite += [
        descending_telescope_family(bp, 1),
        finite_family(
            [interval(-1, 0), interval(0, Fraction(1, 2)), interval(Fraction(1, 2), POS_INF)],
            interval(-1, POS_INF),
            EMPTY,
            "three pieces of [[-1, inf))",
        ),
    ]
    if unbounded_above:
        suite.append(telescope_family(bp, 0, POS_INF))
        suite.append(chain_family(bp, interval(NEG_INF, POS_INF)))
    return suite


def _finite_suite(carrier: FinitePointCarrier) -> list[DisjointFamilyGenerator]:
    pool = carrier.pool[:6]
    singletons = [frozenset({x}) for x in pool]
    pairs = [frozenset(pool[i : i + 2]) for i in range(0, len(pool), 2)]
    return [
        finite_family(singletons, frozenset(pool), frozenset(), "singletons"),
        finite_family(pairs, frozenset(pool), frozenset(), "pairs"),
        finite_family([], frozenset(), frozenset(), "empty"),
    ]


def _sequence_suite(spec: CatalogSpec, carrier: SequenceCarrier) -> list[DisjointFamilyGenerator]:
    suite = [
        finite_family(
            [basis(n) for n in range(6)], BinarySequence.of({n: 1 for n in range(6)}), ZEROS, "e^(0..5)"
        ),
        finite_family(
            [BinarySequence.of({0: 1, 2: 1}), BinarySequence.of({1: 1, 5: 1})],
            BinarySequence.of({0: 1, 1: 1, 2: 1, 5: 1}),
            ZEROS,
            "two blocks",
        ),
    ]
    if carrier.domain == "S2_c" and spec.construction in ("coord", "coord_sum"):
        p = spec.params
        ks = [_natural(p["k"], "k")] if spec.construction == "coord" else [_natural(k, "H") for k in p["H"]]
        suite.append(basis_family(max(ks, default=-1) + 1))
    return suite


def basis_family(quiet: int = 0) -> DisjointFamilyGenerator:
    """e^(0), e^(1), ... with union the constant one sequence."""
    return DisjointFamilyGenerator(
        produce=basis, union=ONES, tail=TailCertificate(quiet, "measure_zero"), name="e^(n)"
    )


def unit_telescope_family() -> DisjointFamilyGenerator:
    """[[1/(n+2), 1/(n+1))) in the step ring, exhausting the open interval (0, 1)."""
    return DisjointFamilyGenerator(
        produce=lambda n: span(Fraction(1, n + 2), Fraction(1, n + 1)),
        union=span(0, 1, left_closed=False, right_closed=False),
        tail=TailCertificate(0, "measure_zero"),
        name="telescope of (0, 1)",
    )


def integer_singletons(direction: Literal["up", "down"], quiet: int) -> DisjointFamilyGenerator:
    """{0}, {1}, ... (or {0}, {-1}, ...) with union the integer ray from 0."""
    step = 1 if direction == "up" else -1
    return DisjointFamilyGenerator(
        produce=lambda n: TailedPointSet.of(direction, [step * n]),
        union=TailedPointSet.of(direction, (), 0),
        tail=TailCertificate(quiet, "measure_zero"),
        name=f"integer singletons {direction}",
    )


def catalog_suite(spec: CatalogSpec) -> list[DisjointFamilyGenerator]:
    """Structured disjoint families for the countable check of a construction.

    For measure* constructions the families live on the transported measure.
    """
    c, p = spec.construction, spec.params
    if c == "restriction":
        return catalog_suite(as_spec(p["base"]))
    if c == "cofinite_star":
        return _finite_suite(FinitePointCarrier())
    carrier = catalog_build(spec).carrier
    if isinstance(carrier, IntervalCarrier):
        return _interval_suite(spec, carrier, unbounded_above=c != "sym_sup")
    if isinstance(carrier, FinitePointCarrier):
        return _finite_suite(carrier)
    if isinstance(carrier, SequenceCarrier):
        return _sequence_suite(spec, carrier)
    if isinstance(carrier, TailedCarrier):
        quiet = 0
        if c == "inferiorly_finite":
            quiet = max(0, math.ceil(_rational(p["alpha"], "alpha")))
        elif c == "superiorly_finite":
            quiet = max(0, math.ceil(-_rational(p["beta"], "beta")))
        return [
            integer_singletons(carrier.direction, quiet),
            finite_family(
                [TailedPointSet.of(carrier.direction, [x]) for x in GRID[::5]],
                TailedPointSet.of(carrier.direction, GRID[::5]),
                carrier.empty(),
                "grid singletons",
            ),
        ]
    if isinstance(carrier, StepFunctionCarrier):
        t = _rational(p.get("t", 0), "t")
        return [
            DisjointFamilyGenerator(
                produce=lambda n: indicator_oc(t + Fraction(1, n + 2), t + Fraction(1, n + 1)),
                union=indicator_oc(t, t + 1),
                tail=TailCertificate(0, "measure_zero"),
                name="cells right of t",
            ),
            finite_family(
                [indicator_oc(t - 1, t - Fraction(1, 2)), indicator_oc(t - Fraction(1, 2), t), indicator_oc(t, t + 1)],
                indicator_oc(t - 1, t + 1),
                carrier.empty(),
                "cells around t",
            ),
        ]
    if isinstance(carrier, SparseFunctionCarrier):
        points = GRID[::3]
        return [
            finite_family(
                [SparsePointFunction.of([x]) for x in points],
                SparsePointFunction.of(points),
                carrier.empty(),
                "singletons",
            )
        ]
    if isinstance(carrier, StepRingCarrier):
        return [
            finite_family(
                [span(0, Fraction(1, 2)), span(Fraction(1, 2), 1), step_points([2])],
                span(0, 1).combine("or", step_points([2])),
                carrier.empty(),
                "pieces of [[0, 1)) and a point",
            )
        ]
    if isinstance(carrier, CharFunctionCarrier):
        u = carrier.universe
        return [
            finite_family(
                [CharFunction(u, 1 << i) for i in range(len(u))],
                CharFunction(u, u.full),
                carrier.empty(),
                "point indicators",
            )
        ]
    raise UsageError(f"no family suite for {c}")


NAMED_FAMILIES = ("e-n", "telescope-unit", "singletons", "empty")


def named_family(name: str, spec: CatalogSpec) -> DisjointFamilyGenerator:
    """The CLI's families by name, shaped for the carrier of `spec`."""
    carrier = catalog_build(spec).carrier
    if name == "e-n":
        if not isinstance(carrier, SequenceCarrier):
            raise UsageError("family e-n lives on the sequence space")
        ks = []
        if spec.construction == "coord":
            ks = [_natural(spec.params["k"], "k")]
        elif spec.construction == "coord_sum":
            ks = [_natural(k, "H") for k in spec.params["H"]]
        return basis_family(max(ks, default=-1) + 1)
    if name == "telescope-unit":
        if isinstance(carrier, StepRingCarrier):
            return unit_telescope_family()
        if isinstance(carrier, IntervalCarrier):
            return telescope_family(_breakpoints(spec), 0, 1)
        raise UsageError("family telescope-unit lives on intervals or the step ring")
    if name == "singletons":
        for fam in catalog_suite(spec):
            if "singletons" in fam.name or fam.name == "point indicators":
                return fam
        raise UsageError(f"no singleton family on {carrier.name}")
    if name == "empty":
        return finite_family([], carrier.empty(), carrier.empty(), "empty")
    raise UsageError(f"unknown family {name!r}, expected one of {', '.join(NAMED_FAMILIES)}")


# ---------------------------------------------------------------------------
# certification and the counterexamples


@dataclass(frozen=True)
class CatalogCertificate:
    claim: str
    sampling: SampleReport
    families: tuple[tuple[str, CountableReport], ...]

    @property
    def countable(self) -> bool:
        return all(report.passed for _, report in self.families)


def certify_catalog(
    spec: CatalogSpec, samples: int, depth: int, rng: np.random.Generator
) -> CatalogCertificate:
    """Sample additivity (or additivity*) and run every family of the suite."""
    mu = catalog_build(spec)
    claim = claim_of(spec)
    if claim == "measure*":
        sampling = sample_additivity_star(mu, samples, rng)
        target = star_transport(mu)
    else:
        sampling = sample_additivity(mu, samples, rng)
        target = mu
    reports = tuple(
        (fam.name, check_countable_family(target, fam, max(depth, fam.tail.index)))
        for fam in catalog_suite(spec)
    )
    return CatalogCertificate(claim, sampling, reports)


@dataclass(frozen=True)
class DivergenceReport:
    case: str
    union_value: Bit
    xor_sum: Bit
    countably_additive: Bit
    depth: int


COUNTEREXAMPLES = ("seq_3_6", "interval_3_13")


def counterexample_divergence(case: str, depth: int = 64) -> DivergenceReport:
    """Run the designated family of an additive function that is not a measure."""
    case = case.replace("-", "_")
    if case == "seq_3_6":
        mu = catalog_build(CatalogSpec(construction="limit", params={"domain": "S2_c"}))
        fam = basis_family()
    elif case == "interval_3_13":
        mu = catalog_build(CatalogSpec(construction="step_ring_parity"))
        fam = unit_telescope_family()
    else:
        raise UsageError(f"unknown case {case!r}, expected one of {', '.join(COUNTEREXAMPLES)}")
    report = check_countable_family(mu, fam, depth)
    return DivergenceReport(case, report.union_value, report.xor_sum, int(report.passed), depth)
