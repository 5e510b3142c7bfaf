"""Subsets of a finite universe, set rings and the characteristic-function isomorphism.

Subsets are bitmasks over the universe order: bit i set iff the i-th label
belongs to the subset. Families are kept as sorted tuples of masks so that
equal families compare equal structurally.
"""

from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Literal, Mapping, Sequence

from b2 import Bit
from errors import PreconditionError, StructuralError, UsageError

LawPair = Literal["delta_cap", "theta_cup"]
LAW_PAIRS: tuple[LawPair, ...] = ("delta_cap", "theta_cup")
SET_OPS = ("delta", "cap", "cup", "theta", "minus", "complement")

DEFAULT_UNIVERSE_CAP = 24


@dataclass(frozen=True)
class FiniteUniverse:
    elements: tuple[Hashable, ...]
    cap: int = DEFAULT_UNIVERSE_CAP

    def __post_init__(self):
        if len(set(self.elements)) != len(self.elements):
            raise UsageError(f"universe labels are not distinct: {self.elements}")
        if len(self.elements) > self.cap:
            raise UsageError(
                f"universe has {len(self.elements)} elements, cap is {self.cap}"
            )

    @classmethod
    def of(cls, elements: Iterable[Hashable], cap: int = DEFAULT_UNIVERSE_CAP):
        return cls(tuple(elements), cap)

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def full(self) -> int:
        return (1 << len(self.elements)) - 1

    def index(self, label: Hashable) -> int:
        try:
            return self.elements.index(label)
        except ValueError:
            raise UsageError(f"label {label!r} not in universe")

    def mask_of(self, labels: Iterable[Hashable]) -> int:
        bits = 0
        for label in labels:
            bits |= 1 << self.index(label)
        return bits

    def labels_of(self, bits: int) -> tuple[Hashable, ...]:
        return tuple(e for i, e in enumerate(self.elements) if bits >> i & 1)

    def subset(self, labels: Iterable[Hashable]) -> "SubsetMask":
        return SubsetMask(self, self.mask_of(labels))

    def power_set(self) -> tuple[int, ...]:
        return tuple(range(1 << len(self.elements)))


@dataclass(frozen=True)
class SubsetMask:
    universe: FiniteUniverse
    bits: int

    def __post_init__(self):
        if self.bits < 0 or self.bits > self.universe.full:
            raise UsageError(f"mask {self.bits:#x} exceeds universe of size {len(self.universe)}")

    @property
    def labels(self) -> tuple[Hashable, ...]:
        return self.universe.labels_of(self.bits)

    def __contains__(self, label: Hashable) -> bool:
        return bool(self.bits >> self.universe.index(label) & 1)


def mask_op(op: str, a: int, b: int, full: int) -> int:
    """Set law on raw masks; `b` is ignored for complement."""
    if op == "delta":
        return a ^ b
    if op == "cap":
        return a & b
    if op == "cup":
        return a | b
    if op == "theta":
        return full & ~(a ^ b)
    if op == "minus":
        return a & ~b
    if op == "complement":
        return full & ~a
    raise UsageError(f"unknown set op {op!r}, expected one of {', '.join(SET_OPS)}")


def set_op(op: str, A: SubsetMask, B: SubsetMask | None = None) -> SubsetMask:
    if op == "complement":
        if B is not None:
            raise UsageError("complement takes one argument")
        return SubsetMask(A.universe, mask_op(op, A.bits, 0, A.universe.full))
    if B is None:
        raise UsageError(f"set op {op!r} takes two arguments")
    if A.universe != B.universe:
        raise StructuralError("operands live on different universes")
    return SubsetMask(A.universe, mask_op(op, A.bits, B.bits, A.universe.full))


def _closed(members: frozenset[int], ops: tuple[Callable[[int, int], int], ...]) -> bool:
    for a in members:
        for b in members:
            for op in ops:
                if op(a, b) not in members:
                    return False
    return True


def _conditions(members: frozenset[int], law_pair: LawPair, full: int) -> tuple[bool, bool]:
    """The two equivalent closure conditions of a law pair: (cup, minus) vs (delta, cap) and their duals."""
    if law_pair == "delta_cap":
        first = _closed(members, (lambda a, b: a | b, lambda a, b: a & ~b))
        second = _closed(members, (lambda a, b: a ^ b, lambda a, b: a & b))
    elif law_pair == "theta_cup":
        first = _closed(members, (lambda a, b: full & ~(a ^ b), lambda a, b: a | b))
        second = _closed(members, (lambda a, b: a & b, lambda a, b: a | (full & ~b)))
    else:
        raise UsageError(f"unknown law pair {law_pair!r}")
    return first, second


def is_set_ring(universe: FiniteUniverse, members: Iterable[int], law_pair: LawPair) -> Bit:
    family = frozenset(members)
    if not family:
        raise PreconditionError("a set ring is a non-empty family of subsets")
    first, second = _conditions(family, law_pair, universe.full)
    assert first == second, f"ring closure conditions disagree on {sorted(family)}"
    return int(first)


@dataclass(frozen=True)
class SetRingFamily:
    universe: FiniteUniverse
    members: tuple[int, ...]
    law_pair: LawPair
    _lookup: frozenset[int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_lookup", frozenset(self.members))
        if list(self.members) != sorted(set(self.members)):
            raise StructuralError("family members must be distinct and sorted")
        if not is_set_ring(self.universe, self.members, self.law_pair):
            raise StructuralError(
                f"family is not closed under {self.law_pair}: {list(self.members)}"
            )

    @classmethod
    def of(cls, universe: FiniteUniverse, members: Iterable[int], law_pair: LawPair):
        return cls(universe, tuple(sorted(set(members))), law_pair)

    @classmethod
    def power_set(cls, universe: FiniteUniverse, law_pair: LawPair = "delta_cap"):
        return cls(universe, universe.power_set(), law_pair)

    def __contains__(self, bits: int) -> bool:
        return bits in self._lookup

    def subsets(self) -> list[SubsetMask]:
        return [SubsetMask(self.universe, m) for m in self.members]


def is_set_algebra(universe: FiniteUniverse, members: Iterable[int], law_pair: LawPair) -> Bit:
    family = frozenset(members)
    if not is_set_ring(universe, family, law_pair):
        raise PreconditionError("family is not a set ring")
    if law_pair == "delta_cap":
        return int(universe.full in family)
    return int(0 in family)


def ring_unit(family: SetRingFamily) -> int:
    """The unit of a set algebra: X for (delta, cap), the empty set for (theta, cup)."""
    if not is_set_algebra(family.universe, family.members, family.law_pair):
        raise PreconditionError("family is a ring but not a set algebra")
    return family.universe.full if family.law_pair == "delta_cap" else 0


def complement_family(family: SetRingFamily) -> SetRingFamily:
    """Transport a ring to its dual law pair by complementing every member."""
    full = family.universe.full
    dual: LawPair = "theta_cup" if family.law_pair == "delta_cap" else "delta_cap"
    return SetRingFamily.of(family.universe, (full & ~m for m in family.members), dual)


def generate_ring(
    universe: FiniteUniverse, generators: Sequence[int], law_pair: LawPair
) -> SetRingFamily:
    """Least family containing `generators` and closed under the law pair."""
    if not generators:
        raise PreconditionError("at least one generator is required")
    full = universe.full
    if law_pair == "delta_cap":
        ops = (lambda a, b: a ^ b, lambda a, b: a & b)
    elif law_pair == "theta_cup":
        ops = (lambda a, b: full & ~(a ^ b), lambda a, b: a | b)
    else:
        raise UsageError(f"unknown law pair {law_pair!r}")

    family: set[int] = set()
    pending = list(dict.fromkeys(generators))
    while pending:
        new = pending.pop()
        if new in family:
            continue
        family.add(new)
        for old in list(family):
            for op in ops:
                for value in (op(new, old), op(old, new)):
                    if value not in family:
                        pending.append(value)
    return SetRingFamily.of(universe, family, law_pair)


@dataclass(frozen=True)
class CharFunction:
    """chi_A as a pointwise bit function on the universe."""

    universe: FiniteUniverse
    bits: int

    def __call__(self, label: Hashable) -> Bit:
        return self.bits >> self.universe.index(label) & 1

    def table(self) -> dict[Hashable, Bit]:
        return {e: self(e) for e in self.universe.elements}


def char_function(A: SubsetMask) -> CharFunction:
    return CharFunction(A.universe, A.bits)


def support(f: Callable[[Hashable], Bit] | Mapping[Hashable, Bit], universe: FiniteUniverse) -> SubsetMask:
    """The set of points where f takes the value 1."""
    value = f.get if isinstance(f, Mapping) else f
    return SubsetMask(universe, universe.mask_of(e for e in universe.elements if value(e) == 1))
