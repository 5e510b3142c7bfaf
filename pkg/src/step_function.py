"""Binary step functions R -> B2 and finitely supported point functions.

A BinaryStepFunction is v0 on the initial ray and flips its value just
after every toggle point:

    f(t) = v0 xor parity(#{s in toggles : s < t})

so f is left continuous everywhere and f(inf) is v0 xor parity(#toggles).
"""

from bisect import bisect_left, bisect_right
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from b2 import Bit, binary_law, check_bit
from errors import UsageError
from interval_ring import NEG_INF, POS_INF, ExtendedRational, IntervalUnion, ext, member

Point = Fraction | tuple[Fraction, ...]


@dataclass(frozen=True)
class BinaryStepFunction:
    v0: Bit = 0
    toggles: tuple[Fraction, ...] = ()

    def __post_init__(self):
        check_bit(self.v0)
        for s in self.toggles:
            if not isinstance(s, Fraction):
                raise UsageError(f"toggle {s!r} is not a rational")
        if any(not a < b for a, b in zip(self.toggles, self.toggles[1:])):
            raise UsageError("toggles must be strictly increasing")

    def __call__(self, t: ExtendedRational) -> Bit:
        return sf_eval(self, t)


ZERO = BinaryStepFunction()


def sf_normalize(v0: Bit, raw_toggles: Iterable[Fraction | int | str]) -> BinaryStepFunction:
    """Cancel equal toggles in pairs and sort the rest."""
    counts = Counter(ext(s) for s in raw_toggles)
    for s in counts:
        if not isinstance(s, Fraction):
            raise UsageError("toggles must be finite")
    return BinaryStepFunction(check_bit(v0), tuple(sorted(s for s, c in counts.items() if c % 2)))


def sf_eval(f: BinaryStepFunction, t: ExtendedRational) -> Bit:
    """f(t); t = inf gives the prolonged value, t = -inf gives v0."""
    if t == POS_INF:
        return f.v0 ^ (len(f.toggles) & 1)
    return f.v0 ^ (bisect_left(f.toggles, t) & 1)


def sf_left_limit(f: BinaryStepFunction, t: ExtendedRational) -> Bit:
    """f(t - 0); equal to f(t) since the class is left continuous."""
    return sf_eval(f, t)


def value_after(f: BinaryStepFunction, t: ExtendedRational) -> Bit:
    """f(t + 0), the constant value on a small interval just right of t."""
    return f.v0 ^ (bisect_right(f.toggles, t) & 1)


def sf_combine(law: str, f: BinaryStepFunction, g: BinaryStepFunction) -> BinaryStepFunction:
    """Pointwise combination under a binary law of B2."""
    if law == "xor":
        return sf_normalize(f.v0 ^ g.v0, f.toggles + g.toggles)
    op = binary_law(law)
    v0 = op(f.v0, g.v0)
    current = v0
    toggles = []
    for p in sorted(set(f.toggles) | set(g.toggles)):
        after = op(value_after(f, p), value_after(g, p))
        if after != current:
            toggles.append(p)
            current = after
    return BinaryStepFunction(v0, tuple(toggles))


def sf_not(f: BinaryStepFunction) -> BinaryStepFunction:
    return BinaryStepFunction(1 ^ f.v0, f.toggles)


def indicator_oc(a: Fraction | int | str, b: Fraction | int | str) -> BinaryStepFunction:
    """Indicator of the left-open right-closed interval (a, b]."""
    a, b = ext(a), ext(b)
    if not a < b:
        return ZERO
    return sf_normalize(0, [a, b])


def support_cells(f: BinaryStepFunction) -> list[tuple[ExtendedRational, ExtendedRational]]:
    """supp f as left-open right-closed cells (l, r]; r = inf means the open ray."""
    cells = []
    bounds = [NEG_INF, *f.toggles, POS_INF]
    value = f.v0
    for lo, hi in zip(bounds, bounds[1:]):
        if value:
            cells.append((lo, hi))
        value ^= 1
    return cells


def _exact(p):
    if isinstance(p, tuple):
        return tuple(_exact(c) for c in p)
    if isinstance(p, int) and not isinstance(p, bool):
        return Fraction(p)
    return p


@dataclass(frozen=True)
class SparsePointFunction:
    """A function with value 1 exactly on a finite support.

    Points are rationals (n = 1) or equal-length tuples of rationals.
    """

    support: tuple[Point, ...] = ()
    _points: frozenset[Point] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_points", frozenset(self.support))
        if list(self.support) != sorted(set(self.support)):
            raise UsageError("support must be sorted without duplicates")
        dims = {len(p) if isinstance(p, tuple) else 1 for p in self.support}
        if len(dims) > 1:
            raise UsageError("support points have mixed dimensions")

    @classmethod
    def of(cls, points: Iterable[Point]) -> "SparsePointFunction":
        """Integer coordinates become Fractions; other labels are kept as given."""
        return cls(tuple(sorted({_exact(p) for p in points})))

    @property
    def dimension(self) -> int:
        if not self.support:
            return 1
        p = self.support[0]
        return len(p) if isinstance(p, tuple) else 1

    def __call__(self, x: Point) -> Bit:
        return int(x in self._points)

    @property
    def points(self) -> frozenset[Point]:
        return self._points

    def combine(self, law: str, other: "SparsePointFunction") -> "SparsePointFunction":
        if law == "xor":
            return SparsePointFunction.of(self.points ^ other.points)
        if law == "and":
            return SparsePointFunction.of(self.points & other.points)
        if law == "or":
            return SparsePointFunction.of(self.points | other.points)
        raise UsageError(f"law {law!r} does not keep the support finite")

    def restrict(self, A: IntervalUnion) -> "SparsePointFunction":
        """f times the indicator of A, for one-dimensional f."""
        return SparsePointFunction(tuple(x for x in self.support if member(A, x)))


def window_count(support: Sequence[Fraction], a: ExtendedRational, b: ExtendedRational) -> int:
    """#{x in support : a <= x < b} for a sorted one-dimensional support."""
    if not a < b:
        return 0
    return bisect_left(support, b) - bisect_left(support, a)
