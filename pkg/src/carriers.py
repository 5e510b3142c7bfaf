"""Concrete carriers for the set and function types of the lower modules."""

from fractions import Fraction
from typing import Any, Hashable

import numpy as np

from errors import UsageError
from interval_ring import EMPTY, IntervalUnion, has_finite_endpoints, iv_op
from sampling import random_interval_union, random_label_set, random_sparse, random_step_function
from set_function import Carrier
from set_ring import SetRingFamily
from step_function import ZERO, BinaryStepFunction, SparsePointFunction, sf_combine

GRID = tuple(Fraction(k, 2) for k in range(-12, 13))


class FinitePointCarrier(Carrier[frozenset]):
    """R_f(X): finite subsets of X, as frozensets of labels or rationals."""

    def __init__(self, universe: tuple[Hashable, ...] | None = None, name: str = "R_f"):
        self.universe = None if universe is None else frozenset(universe)
        self.pool = GRID if universe is None else tuple(universe)
        self.name = name

    def contains(self, A: Any) -> bool:
        if not isinstance(A, frozenset):
            return False
        return self.universe is None or A <= self.universe

    def empty(self) -> frozenset:
        return frozenset()

    def delta(self, A, B):
        return A ^ B

    def cap(self, A, B):
        return A & B

    def cup(self, A, B):
        return A | B

    def is_empty(self, A) -> bool:
        return not A

    def sample(self, rng: np.random.Generator) -> frozenset:
        return random_label_set(rng, self.pool)


class IntervalCarrier(Carrier[IntervalUnion]):
    """Sym-: finite unions of [[a, b)); with `finite_only`, the subring of finite endpoints."""

    def __init__(self, finite_only: bool = False):
        self.finite_only = finite_only
        self.name = "Sym'" if finite_only else "Sym-"

    def contains(self, A: Any) -> bool:
        if not isinstance(A, IntervalUnion):
            return False
        return not self.finite_only or has_finite_endpoints(A)

    def empty(self) -> IntervalUnion:
        return EMPTY

    def delta(self, A, B):
        return iv_op("delta", A, B)

    def cap(self, A, B):
        return iv_op("cap", A, B)

    def cup(self, A, B):
        return iv_op("cup", A, B)

    def minus(self, A, B):
        return iv_op("minus", A, B)

    def is_empty(self, A) -> bool:
        return not A.components

    def sample(self, rng: np.random.Generator) -> IntervalUnion:
        return random_interval_union(rng, infinite=not self.finite_only)

    def first_overlap(self, sets):
        # sort all components once instead of folding a running union
        parts = sorted(
            (a, b, i) for i, A in enumerate(sets) for a, b in A.components
        )
        for (a1, b1, i), (a2, b2, j) in zip(parts, parts[1:]):
            if a2 < b1:
                return (min(i, j), max(i, j))
        return None


class StepFunctionCarrier(Carrier[BinaryStepFunction]):
    """The B2-algebra of left-continuous step functions; f and g are disjoint when f.g = 0."""

    name = "step functions"

    def contains(self, A: Any) -> bool:
        return isinstance(A, BinaryStepFunction)

    def empty(self) -> BinaryStepFunction:
        return ZERO

    def delta(self, A, B):
        return sf_combine("xor", A, B)

    def cap(self, A, B):
        return sf_combine("and", A, B)

    def cup(self, A, B):
        return sf_combine("or", A, B)

    def sample(self, rng: np.random.Generator) -> BinaryStepFunction:
        return random_step_function(rng)


class SparseFunctionCarrier(Carrier[SparsePointFunction]):
    """Functions with finite support, identified with their supports."""

    name = "I_inf"

    def contains(self, A: Any) -> bool:
        return isinstance(A, SparsePointFunction)

    def empty(self) -> SparsePointFunction:
        return SparsePointFunction()

    def delta(self, A, B):
        return A.combine("xor", B)

    def cap(self, A, B):
        return A.combine("and", B)

    def cup(self, A, B):
        return A.combine("or", B)

    def is_empty(self, A) -> bool:
        return not A.support

    def sample(self, rng: np.random.Generator) -> SparsePointFunction:
        return random_sparse(rng)


class MaskCarrier(Carrier[int]):
    """The members of a finite (delta, cap) ring, as bitmasks."""

    def __init__(self, ring: SetRingFamily):
        if ring.law_pair != "delta_cap":
            raise UsageError("mask carriers take (delta, cap) rings")
        self.ring = ring
        self.name = f"ring over {len(ring.universe)} labels"

    def contains(self, A: Any) -> bool:
        return isinstance(A, int) and A in self.ring

    def empty(self) -> int:
        return 0

    def delta(self, A, B):
        return A ^ B

    def cap(self, A, B):
        return A & B

    def cup(self, A, B):
        return A | B

    def sample(self, rng: np.random.Generator) -> int:
        members = self.ring.members
        return members[int(rng.integers(0, len(members)))]
