"""Binary set functions: additivity, its derived identities, countable additivity.

Finite rings are checked exhaustively. Infinite carriers cannot be
enumerated, so there additivity is sampled and countable additivity is
checked on structured families that carry a tail certificate. A passing
result on an infinite carrier certifies the measure relative to the
families that were checked; it is not a proof.
"""

from dataclasses import dataclass, field
from itertools import product
from typing import Any, Callable, Generic, Iterable, Literal, Mapping, Sequence, TypeVar

import numpy as np

from b2 import Bit, check_bit
from errors import DiagnosticError, DomainError, PreconditionError, UsageError
from set_ring import SetRingFamily, complement_family

S = TypeVar("S")


class Carrier(Generic[S]):
    """The ring a measure lives on: its laws, emptiness test and a sampler.

    Subclasses implement `contains`, `empty`, `delta`, `cap`, `cup` and
    `sample`; the remaining helpers are derived from those.
    """

    name: str = "abstract"
    law_pair: Literal["delta_cap", "theta_cup"] = "delta_cap"

    def contains(self, A: Any) -> bool:
        raise NotImplementedError

    def empty(self) -> S:
        raise NotImplementedError

    def delta(self, A: S, B: S) -> S:
        raise NotImplementedError

    def cap(self, A: S, B: S) -> S:
        raise NotImplementedError

    def cup(self, A: S, B: S) -> S:
        raise NotImplementedError

    def sample(self, rng: np.random.Generator) -> S:
        raise NotImplementedError

    def covering(self, A: S, B: S) -> S:
        """A set built from B whose union with A is the unit; (theta, cup) carriers only."""
        raise PreconditionError(f"{self.name} has no covering pairs")

    def is_empty(self, A: S) -> bool:
        return A == self.empty()

    def minus(self, A: S, B: S) -> S:
        return self.delta(A, self.cap(A, B))

    def subset(self, A: S, B: S) -> bool:
        return self.is_empty(self.minus(A, B))

    def first_overlap(self, sets: Sequence[S]) -> tuple[int, int] | None:
        """First pair (i, j), i < j, of intersecting sets, or None."""
        seen = self.empty()
        for j, A in enumerate(sets):
            if not self.is_empty(self.cap(seen, A)):
                for i in range(j):
                    if not self.is_empty(self.cap(sets[i], A)):
                        return i, j
            seen = self.cup(seen, A)
        return None


@dataclass(frozen=True)
class AbstractMeasure:
    """mu: carrier -> B2, total on the carrier's domain."""

    name: str
    carrier: Carrier
    fn: Callable[[Any], Bit] = field(compare=False)

    def __call__(self, A: Any) -> Bit:
        if not self.carrier.contains(A):
            raise DomainError(f"{self.name}: argument outside domain {self.carrier.name}: {A!r}")
        return self.fn(A)


@dataclass(frozen=True)
class TabulatedSetFunction:
    """mu given by its value on every member of a finite ring."""

    ring: SetRingFamily
    values: Mapping[int, Bit]

    def __post_init__(self):
        if set(self.values) != set(self.ring.members):
            raise UsageError("values must be given for exactly the members of the ring")
        for v in self.values.values():
            check_bit(v)

    @classmethod
    def of(cls, ring: SetRingFamily, fn: Callable[[int], Bit]) -> "TabulatedSetFunction":
        return cls(ring, {m: fn(m) for m in ring.members})

    def __call__(self, bits: int) -> Bit:
        try:
            return self.values[bits]
        except KeyError:
            raise DomainError(f"{bits:#x} is not a member of the ring")

    def __hash__(self):
        return hash((self.ring, tuple(sorted(self.values.items()))))


def _require(mu: TabulatedSetFunction, law_pair: str) -> None:
    if mu.ring.law_pair != law_pair:
        raise PreconditionError(f"expected a {law_pair} ring, got {mu.ring.law_pair}")


def additivity_witness(mu: TabulatedSetFunction) -> tuple[int, int] | None:
    """First disjoint pair breaking mu(A v B) = mu(A) xor mu(B), or None."""
    _require(mu, "delta_cap")
    members = mu.ring.members
    for a in members:
        for b in members:
            if a & b == 0 and mu(a | b) != mu(a) ^ mu(b):
                return a, b
    return None


def is_additive(mu: TabulatedSetFunction) -> Bit:
    """Checks disjoint unions and, as a cross-check, all symmetric differences."""
    a1 = additivity_witness(mu) is None
    members = mu.ring.members
    a2 = all(mu(a ^ b) == mu(a) ^ mu(b) for a in members for b in members)
    assert a1 == a2, "union and symmetric difference forms of additivity disagree"
    return int(a1)


def is_additive_star(mu: TabulatedSetFunction) -> Bit:
    """Covering pairs under cap, cross-checked with theta."""
    _require(mu, "theta_cup")
    full = mu.ring.universe.full
    members = mu.ring.members
    b1 = all(
        mu(a & b) == 1 ^ mu(a) ^ mu(b)
        for a in members
        for b in members
        if a | b == full
    )
    b2 = all(mu(full & ~(a ^ b)) == 1 ^ mu(a) ^ mu(b) for a in members for b in members)
    assert b1 == b2, "cap and theta forms of additivity* disagree"
    return int(b1)


def dual_function(mu: TabulatedSetFunction) -> TabulatedSetFunction:
    """mu*(A) = not mu(complement A) on the complemented ring."""
    full = mu.ring.universe.full
    ring = complement_family(mu.ring)
    return TabulatedSetFunction.of(ring, lambda m: 1 ^ mu(full & ~m))


def tabulate(measure: AbstractMeasure, ring: SetRingFamily) -> TabulatedSetFunction:
    """Evaluate a measure on label sets at every member of a finite ring."""
    labels = ring.universe.labels_of
    return TabulatedSetFunction.of(ring, lambda m: measure(frozenset(labels(m))))


def linear_functionals(n: int) -> frozenset[tuple[Bit, ...]]:
    """Value tables (indexed by mask) of the 2^n GF(2)-linear maps on subsets of n points."""
    masks = np.arange(1 << n)
    vectors = (masks[:, None] >> np.arange(n)[None, :]) & 1
    tables = set()
    for w in product((0, 1), repeat=n):
        values = (vectors @ np.array(w, dtype=np.int64)) % 2
        tables.add(tuple(int(v) for v in values))
    return frozenset(tables)


@dataclass(frozen=True)
class ItemResult:
    item: int
    passed: bool
    witness: tuple | None = None


@dataclass(frozen=True)
class PropertiesReport:
    items: tuple[ItemResult, ...]

    @property
    def passed(self) -> bool:
        return all(item.passed for item in self.items)


def _first(pairs: Iterable[tuple[int, int]], ok: Callable[[int, int], bool]) -> tuple | None:
    for a, b in pairs:
        if not ok(a, b):
            return a, b
    return None


def additive_properties_report(mu: TabulatedSetFunction) -> PropertiesReport:
    """Items 1-3 (mu(0) = 0, differences, unions) for additive mu; items 4-6, their duals, for additive* mu."""
    members = mu.ring.members
    pairs = [(a, b) for a in members for b in members]
    full = mu.ring.universe.full
    if mu.ring.law_pair == "delta_cap":
        if not is_additive(mu):
            raise PreconditionError("items 1-3 need an additive function")
        w2 = _first(pairs, lambda a, b: mu(a & ~b) == mu(a) ^ mu(a & b))
        w3 = _first(pairs, lambda a, b: mu(a | b) ^ mu(a & b) ^ mu(a ^ b) == 0)
        return PropertiesReport(
            (
                ItemResult(1, mu(0) == 0, None if mu(0) == 0 else (0,)),
                ItemResult(2, w2 is None, w2),
                ItemResult(3, w3 is None, w3),
            )
        )
    if not is_additive_star(mu):
        raise PreconditionError("items 4-6 need an additive* function")
    w5 = _first(pairs, lambda a, b: mu(a | (full & ~b)) == 1 ^ mu(a) ^ mu(a | b))
    w6 = _first(pairs, lambda a, b: mu(a | b) ^ mu(a & b) ^ mu(full & ~(a ^ b)) == 1)
    return PropertiesReport(
        (
            ItemResult(4, mu(full) == 1, None if mu(full) == 1 else (full,)),
            ItemResult(5, w5 is None, w5),
            ItemResult(6, w6 is None, w6),
        )
    )


@dataclass(frozen=True)
class SampleReport:
    passed: bool
    checked: int
    witness: tuple | None = None


def sample_additivity(mu: AbstractMeasure, samples: int, rng: np.random.Generator) -> SampleReport:
    """mu(A v B) = mu(A) xor mu(B) on random disjoint pairs of the carrier."""
    carrier = mu.carrier
    for i in range(samples):
        A = carrier.sample(rng)
        B = carrier.minus(carrier.sample(rng), A)
        if mu(carrier.cup(A, B)) != mu(A) ^ mu(B):
            return SampleReport(False, i + 1, (A, B))
    return SampleReport(True, samples)


def sample_additivity_star(mu: AbstractMeasure, samples: int, rng: np.random.Generator) -> SampleReport:
    """mu(A cap B) = mu(A) xnor mu(B) on random pairs covering the unit."""
    carrier = mu.carrier
    if carrier.law_pair != "theta_cup":
        raise PreconditionError(f"{carrier.name} is not a (theta, cup) ring")
    for i in range(samples):
        A = carrier.sample(rng)
        B = carrier.covering(A, carrier.sample(rng))
        if mu(carrier.cap(A, B)) != 1 ^ mu(A) ^ mu(B):
            return SampleReport(False, i + 1, (A, B))
    return SampleReport(True, samples)


@dataclass(frozen=True)
class TailCertificate:
    """From `index` on, every member is empty or has measure 0."""

    index: int
    reason: Literal["all_empty", "measure_zero"]


@dataclass(frozen=True)
class DisjointFamilyGenerator:
    produce: Callable[[int], Any] = field(compare=False)
    union: Any
    tail: TailCertificate
    name: str = ""


@dataclass(frozen=True)
class CountableReport:
    finitely_many_ones: Bit
    xor_equality: Bit
    union_value: Bit
    xor_sum: Bit
    ones: tuple[int, ...]
    depth: int

    @property
    def passed(self) -> bool:
        return bool(self.finitely_many_ones and self.xor_equality)


def finite_family(sets: Sequence[Any], union: Any, empty: Any, name: str = "") -> DisjointFamilyGenerator:
    """A finite family, continued by empty sets."""
    items = tuple(sets)
    return DisjointFamilyGenerator(
        produce=lambda n: items[n] if n < len(items) else empty,
        union=union,
        tail=TailCertificate(len(items), "all_empty"),
        name=name,
    )


def check_countable_family(
    mu: AbstractMeasure, fam: DisjointFamilyGenerator, depth: int
) -> CountableReport:
    """Finitely many ones and the xor identity on the first `depth` members of a disjoint family."""
    if depth < fam.tail.index:
        raise PreconditionError(
            f"depth {depth} is below the tail certificate index {fam.tail.index}"
        )
    carrier = mu.carrier
    if not carrier.contains(fam.union):
        raise DiagnosticError(f"union of {fam.name or 'family'} is not in the ring", fam.union)
    sets = [fam.produce(n) for n in range(depth)]
    overlap = carrier.first_overlap(sets)
    if overlap is not None:
        i, j = overlap
        raise DiagnosticError(
            f"{fam.name or 'family'} is not disjoint: members {i} and {j} meet",
            (i, j, sets[i], sets[j]),
        )
    values = [mu(A) for A in sets]
    ones = tuple(n for n, v in enumerate(values) if v)
    tail_ok = True
    for n in range(fam.tail.index, depth):
        if fam.tail.reason == "all_empty":
            tail_ok = tail_ok and carrier.is_empty(sets[n])
        else:
            tail_ok = tail_ok and values[n] == 0
    xor_sum = len(ones) & 1
    union_value = mu(fam.union)
    return CountableReport(
        finitely_many_ones=int(tail_ok),
        xor_equality=int(union_value == xor_sum),
        union_value=union_value,
        xor_sum=xor_sum,
        ones=ones,
        depth=depth,
    )


@dataclass(frozen=True)
class MonotoneFamily:
    """A_0 <= A_1 <= ... (or >=) with its limit; values are constant from `tail` on."""

    produce: Callable[[int], Any] = field(compare=False)
    limit: Any
    tail: int
    name: str = ""


@dataclass(frozen=True)
class ContinuityReport:
    values: tuple[Bit, ...]
    eventually_constant: bool
    limit_value: Bit
    measure_of_limit: Bit

    @property
    def converges(self) -> bool:
        return self.eventually_constant and self.limit_value == self.measure_of_limit


def _check_monotone(
    mu: AbstractMeasure, fam: MonotoneFamily, depth: int, ascending: bool
) -> ContinuityReport:
    if depth <= fam.tail:
        raise PreconditionError(f"depth {depth} must exceed the tail index {fam.tail}")
    carrier = mu.carrier
    if not carrier.contains(fam.limit):
        raise DiagnosticError(f"limit of {fam.name or 'family'} is not in the ring", fam.limit)
    sets = [fam.produce(n) for n in range(depth)]
    for n in range(depth):
        inner, outer = (sets[n], fam.limit) if ascending else (fam.limit, sets[n])
        if n + 1 < depth:
            step = (sets[n], sets[n + 1]) if ascending else (sets[n + 1], sets[n])
            if not carrier.subset(*step):
                raise DiagnosticError(
                    f"{fam.name or 'family'} is not {'ascending' if ascending else 'descending'} at {n}",
                    (n, sets[n], sets[n + 1]),
                )
        if not carrier.subset(inner, outer):
            raise DiagnosticError(f"member {n} is not on the right side of the limit", (n, sets[n]))
    values = tuple(mu(A) for A in sets)
    tail_values = set(values[fam.tail :])
    return ContinuityReport(
        values=values,
        eventually_constant=len(tail_values) == 1,
        limit_value=values[-1],
        measure_of_limit=mu(fam.limit),
    )


def check_ascending_continuity(mu: AbstractMeasure, asc: MonotoneFamily, depth: int) -> ContinuityReport:
    """mu(A_n) settles and its limit is mu(union A_n)."""
    return _check_monotone(mu, asc, depth, ascending=True)


def check_descending_continuity(mu: AbstractMeasure, desc: MonotoneFamily, depth: int) -> ContinuityReport:
    """mu(A_n) settles and its limit is mu(intersection A_n)."""
    return _check_monotone(mu, desc, depth, ascending=False)


def partial_unions(carrier: Carrier, fam: DisjointFamilyGenerator) -> MonotoneFamily:
    """B_n = A_0 v ... v A_n, ascending to the union of the family."""
    cache = [carrier.empty()]

    def produce(n: int):
        while len(cache) <= n + 1:
            cache.append(carrier.cup(cache[-1], fam.produce(len(cache) - 1)))
        return cache[n + 1]

    return MonotoneFamily(produce, fam.union, fam.tail.index, f"partial unions of {fam.name}")


def remainders(carrier: Carrier, fam: DisjointFamilyGenerator) -> MonotoneFamily:
    """C_n = union minus (A_0 v ... v A_{n-1}), descending to the empty set."""
    ascending = partial_unions(carrier, fam)

    def produce(n: int):
        return fam.union if n == 0 else carrier.minus(fam.union, ascending.produce(n - 1))

    return MonotoneFamily(produce, carrier.empty(), fam.tail.index + 1, f"remainders of {fam.name}")


def certify_measure_via_monotone(
    mu: AbstractMeasure,
    strategy: Literal["ascending", "descending"],
    family_suite: Iterable[MonotoneFamily],
    depth: int,
) -> Bit:
    """Countable additivity relative to a suite of monotone families: 1 iff every family converges.

    The caller is responsible for mu being additive.
    """
    if strategy == "ascending":
        check = check_ascending_continuity
    elif strategy == "descending":
        check = check_descending_continuity
    else:
        raise UsageError(f"unknown strategy {strategy!r}")
    for fam in family_suite:
        if not check(mu, fam, max(depth, fam.tail + 1)).converges:
            return 0
    return 1
