"""Bounded box unions in Q^n, locally finite point sets and derivable measures.

A BoxUnion is a finite list of half-open boxes prod [a_i, b_i) that may
overlap; operations cut both operands along every coordinate plane they
share, decide each grid cell by its lower corner, and merge neighbouring
cells back into larger boxes.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
import math
from typing import Callable, Iterable, Literal, Sequence

import numpy as np

from b2 import Bit, parity
from errors import DerivabilityError, DomainError, PreconditionError, StructuralError, UsageError
from interval_ring import ext, is_finite
from sampling import random_box, random_rational
from set_function import AbstractMeasure, Carrier
from step_function import SparsePointFunction

DEFAULT_DIMENSION_CAP = 3

Box = tuple[tuple[Fraction, Fraction], ...]
Vector = tuple[Fraction, ...]


def as_vector(x) -> Vector:
    """Points of R are accepted bare; everything else is a tuple."""
    if isinstance(x, tuple):
        coords = x
    else:
        coords = (x,)
    out = tuple(ext(c) for c in coords)
    if not all(is_finite(c) for c in out):
        raise UsageError(f"point {x!r} has an infinite coordinate")
    return out


@dataclass(frozen=True)
class BoxUnion:
    dimension: int
    boxes: tuple[Box, ...] = ()

    def __post_init__(self):
        if not 1 <= self.dimension:
            raise UsageError("dimension must be positive")
        for box in self.boxes:
            if len(box) != self.dimension:
                raise StructuralError(f"box {box} does not have dimension {self.dimension}")
            for a, b in box:
                if not (is_finite(a) and is_finite(b)):
                    raise UsageError("boxes are bounded")
                if not a < b:
                    raise UsageError(f"empty side [{a},{b}) in box")
        if list(self.boxes) != sorted(self.boxes):
            raise UsageError("boxes must be in canonical order")

    @classmethod
    def of(
        cls, boxes: Iterable[Sequence[tuple]], dimension: int | None = None, cap: int = DEFAULT_DIMENSION_CAP
    ) -> "BoxUnion":
        """Drop empty boxes, sort the rest."""
        kept = []
        for raw in boxes:
            box = tuple((ext(a), ext(b)) for a, b in raw)
            if dimension is None:
                dimension = len(box)
            if all(a < b for a, b in box):
                kept.append(box)
        if dimension is None:
            raise UsageError("the dimension of an empty box union must be given")
        if dimension > cap:
            raise UsageError(f"dimension {dimension} is above the cap {cap}")
        return cls(dimension, tuple(sorted(set(kept))))

    def __bool__(self) -> bool:
        return bool(self.boxes)


def empty_boxes(dimension: int) -> BoxUnion:
    return BoxUnion(dimension)


def _in_box(box: Box, x: Vector) -> bool:
    return all(a <= c < b for (a, b), c in zip(box, x))


def bx_member(A: BoxUnion, x) -> Bit:
    x = as_vector(x)
    if len(x) != A.dimension:
        raise StructuralError(f"point of dimension {len(x)} against boxes of dimension {A.dimension}")
    return int(any(_in_box(box, x) for box in A.boxes))


def _merge_along(cells: list[Box], axis: int) -> list[Box]:
    groups: dict[tuple, list[tuple[Fraction, Fraction]]] = {}
    for box in cells:
        key = box[:axis] + box[axis + 1 :]
        groups.setdefault(key, []).append(box[axis])
    merged = []
    for key, sides in groups.items():
        sides.sort()
        run = list(sides[0])
        for a, b in sides[1:]:
            if a == run[1]:
                run[1] = b
            else:
                merged.append(key[:axis] + (tuple(run),) + key[axis:])
                run = [a, b]
        merged.append(key[:axis] + (tuple(run),) + key[axis:])
    return merged


_BX_LAWS: dict[str, Callable[[int, int], int]] = {
    "delta": lambda a, b: a ^ b,
    "cap": lambda a, b: a & b,
    "cup": lambda a, b: a | b,
    "minus": lambda a, b: a & (1 ^ b),
}


def bx_op(op: str, A: BoxUnion, B: BoxUnion) -> BoxUnion:
    try:
        law = _BX_LAWS[op]
    except KeyError:
        raise UsageError(f"unknown box op {op!r}, expected delta, cap, cup or minus")
    if A.dimension != B.dimension:
        raise StructuralError(f"dimension mismatch: {A.dimension} and {B.dimension}")
    n = A.dimension
    cuts = [
        sorted({c for box in A.boxes + B.boxes for c in box[axis]}) for axis in range(n)
    ]
    cells = []
    for sides in product(*(list(zip(axis, axis[1:])) for axis in cuts)):
        corner = tuple(a for a, _ in sides)
        inside_a = int(any(_in_box(box, corner) for box in A.boxes))
        inside_b = int(any(_in_box(box, corner) for box in B.boxes))
        if law(inside_a, inside_b):
            cells.append(tuple(sides))
    for axis in reversed(range(n)):
        if cells:
            cells = _merge_along(cells, axis)
    return BoxUnion(n, tuple(sorted(cells)))


def disjoint_boxes(A: BoxUnion) -> BoxUnion:
    """The same point set as pairwise disjoint boxes."""
    return bx_op("cup", A, empty_boxes(A.dimension))


def same_set(A: BoxUnion, B: BoxUnion) -> bool:
    return not bx_op("delta", A, B).boxes


def diameter(A: BoxUnion) -> Fraction:
    """Squared Euclidean diameter, the max over pairs of box corners."""
    if not A.boxes:
        raise DomainError("the empty set has no diameter")
    corners = {corner for box in A.boxes for corner in product(*box)}
    best = Fraction(0)
    for p in corners:
        for q in corners:
            d = sum((a - b) ** 2 for a, b in zip(p, q))
            if d > best:
                best = d
    return best


@dataclass(frozen=True)
class LocallyFiniteSet:
    """Either an explicit finite set of points or the lattice offset + scale * Z^n."""

    kind: Literal["finite", "lattice"]
    dimension: int
    points: frozenset[Vector] = frozenset()
    scale: Fraction = Fraction(1)
    offset: Vector = ()

    def __post_init__(self):
        if self.kind == "lattice":
            if self.scale <= 0:
                raise UsageError("lattice scale must be positive")
            if len(self.offset) != self.dimension:
                raise StructuralError("lattice offset must match the dimension")
        elif self.kind == "finite":
            if any(len(p) != self.dimension for p in self.points):
                raise StructuralError("points must match the dimension")
        else:
            raise UsageError(f"unknown locally finite set kind {self.kind!r}")

    @classmethod
    def finite(cls, points: Iterable, dimension: int | None = None) -> "LocallyFiniteSet":
        pts = frozenset(as_vector(p) for p in points)
        if dimension is None:
            dims = {len(p) for p in pts}
            if len(dims) > 1:
                raise StructuralError("points have mixed dimensions")
            dimension = dims.pop() if dims else 1
        return cls("finite", dimension, pts)

    @classmethod
    def lattice(cls, scale, offset: Iterable) -> "LocallyFiniteSet":
        off = as_vector(tuple(offset))
        return cls("lattice", len(off), scale=Fraction(ext(scale)), offset=off)

    def __contains__(self, x) -> bool:
        x = as_vector(x)
        if self.kind == "finite":
            return x in self.points
        return all(((c - o) / self.scale).denominator == 1 for c, o in zip(x, self.offset))


def _axis_range(a: Fraction, b: Fraction, o: Fraction, q: Fraction) -> range:
    """Integers k with a <= o + q k < b."""
    return range(math.ceil((a - o) / q), math.ceil((b - o) / q))


def _check_dims(H: LocallyFiniteSet, A: BoxUnion) -> None:
    if H.dimension != A.dimension:
        raise StructuralError(f"point set of dimension {H.dimension} against boxes of dimension {A.dimension}")


def locfin_count(H: LocallyFiniteSet, A: BoxUnion) -> int:
    """|A cap H|, by floor/ceil per axis for lattices."""
    _check_dims(H, A)
    if H.kind == "finite":
        return sum(bx_member(A, p) for p in H.points)
    total = 0
    for box in disjoint_boxes(A).boxes:
        total += math.prod(
            len(_axis_range(a, b, o, H.scale)) for (a, b), o in zip(box, H.offset)
        )
    return total


def points_in(H: LocallyFiniteSet, A: BoxUnion) -> tuple[Vector, ...]:
    """A cap H, sorted; finite because A is bounded."""
    _check_dims(H, A)
    if H.kind == "finite":
        return tuple(sorted(p for p in H.points if bx_member(A, p)))
    found = set()
    for box in disjoint_boxes(A).boxes:
        axes = [
            [o + H.scale * k for k in _axis_range(a, b, o, H.scale)]
            for (a, b), o in zip(box, H.offset)
        ]
        found.update(product(*axes))
    return tuple(sorted(found))


@dataclass(frozen=True)
class DerivableMeasure:
    """A measure on bounded box unions.

    Parity measures carry their point set `H` and so their derivative;
    other measures give `fn` only, or `fn` plus a declared `derivative`.
    """

    name: str
    dimension: int
    fn: Callable[[BoxUnion], Bit] = field(compare=False)
    derivative: Callable[[Vector], Bit] | None = field(default=None, compare=False)
    H: LocallyFiniteSet | None = None

    def __call__(self, A: BoxUnion) -> Bit:
        if not isinstance(A, BoxUnion) or A.dimension != self.dimension:
            raise DomainError(f"{self.name}: expected a box union of dimension {self.dimension}")
        return self.fn(A)


def mu_locfin(H: LocallyFiniteSet) -> DerivableMeasure:
    """mu_H(A) = parity of |A cap H|."""
    return DerivableMeasure(
        name=f"mu_H[{H.kind}]",
        dimension=H.dimension,
        fn=lambda A: parity(locfin_count(H, A)),
        derivative=lambda x: int(x in H),
        H=H,
    )


def null_derivable(dimension: int) -> DerivableMeasure:
    """mu of the empty point set."""
    empty = LocallyFiniteSet.finite((), dimension)
    return DerivableMeasure("null", dimension, lambda A: 0, lambda x: 0, empty)


def _probe_box(x: Vector, width: Fraction, rng: np.random.Generator) -> BoxUnion:
    # sides [x_i - l, x_i + r) with 0 <= l < width and 0 < r <= width
    sides = []
    for c in x:
        left = width * int(rng.integers(0, 8)) / 8
        right = width * int(rng.integers(1, 9)) / 8
        sides.append((c - left, c + right))
    return BoxUnion(len(x), (tuple(sides),))


@dataclass(frozen=True)
class ProbeReport:
    values: tuple[Bit, ...]
    passed: bool
    witness: tuple[BoxUnion, BoxUnion] | None = None


def derivability_probe(
    mu: DerivableMeasure, x, epsilon: Fraction, samples: int, rng: np.random.Generator
) -> ProbeReport:
    """Evaluate mu on random boxes around x of diameter below epsilon."""
    x = as_vector(x)
    if len(x) != mu.dimension:
        raise StructuralError("probe point does not match the measure's dimension")
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise UsageError("epsilon must be positive")
    width = epsilon / (2 * len(x))
    values, first = [], {}
    for _ in range(samples):
        B = _probe_box(x, width, rng)
        assert diameter(B) < epsilon**2
        v = mu(B)
        values.append(v)
        first.setdefault(v, B)
    if len(first) > 1:
        return ProbeReport(tuple(values), False, (first[0], first[1]))
    return ProbeReport(tuple(values), True)


def _chebyshev(p: Vector, q: Vector) -> Fraction:
    return max(abs(a - b) for a, b in zip(p, q))


def analytic_epsilon(mu: DerivableMeasure, x) -> Fraction:
    """A radius below which every box around x sees only x among the points of H.

    Half the Chebyshev distance from x to H minus {x}; it never exceeds half
    the Euclidean distance and stays rational.
    """
    if mu.H is None:
        raise PreconditionError("analytic radii exist for parity measures only")
    x = as_vector(x)
    H = mu.H
    if H.kind == "finite":
        others = [_chebyshev(x, p) for p in H.points if p != x]
        return min(others) / 2 if others else Fraction(1)
    if x in H:
        return H.scale / 2
    gaps = []
    for c, o in zip(x, H.offset):
        r = (c - o) % H.scale
        gaps.append(min(r, H.scale - r))
    return max(gaps) / 2


def derivative_at(
    mu: DerivableMeasure,
    x,
    tolerance: Fraction = Fraction(1, 10**6),
    samples: int = 200,
    rng: np.random.Generator | None = None,
) -> Bit:
    """d mu(x): declared for parity measures, probed below `tolerance` otherwise."""
    x = as_vector(x)
    if mu.derivative is not None:
        if len(x) != mu.dimension:
            raise StructuralError("point does not match the measure's dimension")
        return mu.derivative(x)
    report = derivability_probe(mu, x, tolerance, samples, rng or np.random.default_rng(0))
    if not report.passed:
        raise DerivabilityError(f"{mu.name} is not derivable at {x}", report.witness)
    return report.values[0]


def derivative_support(mu: DerivableMeasure, A: BoxUnion) -> tuple[Vector, ...]:
    """{x in A : d mu(x) = 1}; finite since A is bounded and H locally finite."""
    if mu.H is None:
        raise PreconditionError("derivative supports are computed for parity measures only")
    return points_in(mu.H, A)


def reconstruct_measure(g: SparsePointFunction | LocallyFiniteSet) -> DerivableMeasure:
    """The unique derivable measure whose derivative is g."""
    if isinstance(g, LocallyFiniteSet):
        return mu_locfin(g)
    return mu_locfin(LocallyFiniteSet.finite(g.support, g.dimension))


def _support_of(f: SparsePointFunction | LocallyFiniteSet) -> Iterable[Vector]:
    if isinstance(f, LocallyFiniteSet):
        if f.kind == "lattice":
            raise DomainError("an unbounded lattice support needs a bounding set")
        return f.points
    return (as_vector(x) for x in f.support)


def integral_derivable(f: SparsePointFunction | LocallyFiniteSet, mu: DerivableMeasure) -> Bit:
    """xor over x of f(x) d mu(x)."""
    acc = 0
    for x in _support_of(f):
        acc ^= derivative_at(mu, x)
    return acc


def integral_on_derivable(
    A: BoxUnion, g: SparsePointFunction | LocallyFiniteSet, mu: DerivableMeasure
) -> Bit:
    """mu(A cap supp g): parity of the points of A in both supports."""
    if isinstance(g, LocallyFiniteSet) and g.kind == "lattice":
        return parity(sum(derivative_at(mu, x) for x in points_in(g, A)))
    return parity(sum(derivative_at(mu, x) for x in _support_of(g) if bx_member(A, x)))


class BoxCarrier(Carrier[BoxUnion]):
    """U_n: bounded unions of half-open boxes; equality is point-set equality."""

    def __init__(self, dimension: int):
        self.dimension = dimension
        self.name = f"U_{dimension}"

    def contains(self, A) -> bool:
        return isinstance(A, BoxUnion) and A.dimension == self.dimension

    def empty(self) -> BoxUnion:
        return empty_boxes(self.dimension)

    def is_empty(self, A) -> bool:
        return not A.boxes

    def delta(self, A, B):
        return bx_op("delta", A, B)

    def cap(self, A, B):
        return bx_op("cap", A, B)

    def cup(self, A, B):
        return bx_op("cup", A, B)

    def minus(self, A, B):
        return bx_op("minus", A, B)

    def sample(self, rng: np.random.Generator) -> BoxUnion:
        count = int(rng.integers(0, 4))
        return BoxUnion.of((random_box(rng, self.dimension) for _ in range(count)), self.dimension)


def as_abstract(mu: DerivableMeasure) -> AbstractMeasure:
    return AbstractMeasure(mu.name, BoxCarrier(mu.dimension), mu)


def random_locfin(rng: np.random.Generator, dimension: int, lattice: bool = False) -> LocallyFiniteSet:
    if lattice:
        scale = Fraction(int(rng.integers(1, 5)), int(rng.integers(1, 4)))
        return LocallyFiniteSet.lattice(scale, tuple(random_rational(rng, -1, 1) for _ in range(dimension)))
    count = int(rng.integers(0, 9))
    return LocallyFiniteSet.finite(
        (tuple(random_rational(rng, -5, 5) for _ in range(dimension)) for _ in range(count)), dimension
    )
