"""The ring of finite unions of symmetric intervals [[a, b)) over extended rationals.

Endpoints are `Fraction`s, or the float sentinels `NEG_INF`/`POS_INF`; no
other float is ever accepted. An IntervalUnion is always canonical: its
components are nonempty, sorted, and separated by strict gaps, so two unions
are equal as point sets iff they are equal as values.
"""

from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
import math
from typing import Callable, Iterable, Literal, Sequence

from b2 import Bit
from errors import UsageError

NEG_INF = -math.inf
POS_INF = math.inf

ExtendedRational = Fraction | float
Endpoints = tuple[ExtendedRational, ExtendedRational]


def ext(value: int | str | Fraction | float) -> ExtendedRational:
    """Coerce to an extended rational; only infinite floats are accepted."""
    if isinstance(value, float):
        if math.isinf(value):
            return value
        raise UsageError(f"finite floats are not exact rationals: {value!r}")
    if isinstance(value, str):
        text = value.strip()
        if text in ("inf", "+inf"):
            return POS_INF
        if text == "-inf":
            return NEG_INF
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError) as e:
        raise UsageError(f"not a rational: {value!r} ({e})")


def is_finite(value: ExtendedRational) -> bool:
    return not isinstance(value, float)


@dataclass(frozen=True)
class IntervalUnion:
    components: tuple[Endpoints, ...] = ()
    _starts: tuple[ExtendedRational, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        previous_end = None
        for a, b in self.components:
            if not a < b:
                raise UsageError(f"empty component [{a},{b}) in canonical union")
            if a == POS_INF or b == NEG_INF:
                raise UsageError(f"component [{a},{b}) lies outside R")
            if previous_end is not None and not previous_end < a:
                raise UsageError("components must be sorted with strict gaps")
            previous_end = b
        object.__setattr__(self, "_starts", tuple(a for a, _ in self.components))

    def __bool__(self) -> bool:
        return bool(self.components)

    def __len__(self) -> int:
        return len(self.components)

    def endpoints(self) -> list[ExtendedRational]:
        return [p for component in self.components for p in component]


EMPTY = IntervalUnion()


def normalize(
    raw: Iterable[tuple[ExtendedRational, ExtendedRational]],
    mode: Literal["union_of", "delta_of"] = "union_of",
) -> IntervalUnion:
    """Canonical union (or iterated symmetric difference) of raw [[a, b)) pairs."""
    pairs = [(ext(a), ext(b)) for a, b in raw]
    pairs = [(a, b) for a, b in pairs if a < b]
    if mode == "union_of":
        pairs.sort()
        merged: list[list[ExtendedRational]] = []
        for a, b in pairs:
            if merged and a <= merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], b)
            else:
                merged.append([a, b])
        return IntervalUnion(tuple((a, b) for a, b in merged))
    if mode == "delta_of":
        # x is a member iff an odd number of toggles lie at or below x;
        # a toggle at +inf never does
        odd: set[ExtendedRational] = set()
        for a, b in pairs:
            odd ^= {a}
            odd ^= {b}
        toggles = sorted(p for p in odd if p != POS_INF)
        if len(toggles) % 2:
            toggles.append(POS_INF)
        return IntervalUnion(tuple(zip(toggles[0::2], toggles[1::2])))
    raise UsageError(f"unknown normalize mode {mode!r}")


def interval(a: int | str | Fraction | float, b: int | str | Fraction | float) -> IntervalUnion:
    """The symmetric interval [[a, b)), empty when a >= b."""
    return normalize([(a, b)])


def _covers(A: IntervalUnion, x: ExtendedRational) -> bool:
    i = bisect_right(A._starts, x) - 1
    return i >= 0 and x < A.components[i][1]


def sweep(operands: Sequence[IntervalUnion], law: Callable[..., int]) -> IntervalUnion:
    """Combine unions pointwise with `law`, which must map all-zero to zero.

    The merged endpoint list cuts R into cells [p_j, p_{j+1}) on which every
    operand is constant; adjacent cells with value 1 fuse into one component.
    """
    points = sorted({p for A in operands for p in A.endpoints()})
    out: list[list[ExtendedRational]] = []
    for lo, hi in zip(points, points[1:]):
        if law(*(int(_covers(A, lo)) for A in operands)):
            if out and out[-1][1] == lo:
                out[-1][1] = hi
            else:
                out.append([lo, hi])
    return IntervalUnion(tuple((a, b) for a, b in out))


_IV_LAWS: dict[str, Callable[[int, int], int]] = {
    "delta": lambda a, b: a ^ b,
    "cap": lambda a, b: a & b,
    "cup": lambda a, b: a | b,
    "minus": lambda a, b: a & (1 ^ b),
}


def iv_op(op: str, A: IntervalUnion, B: IntervalUnion) -> IntervalUnion:
    try:
        law = _IV_LAWS[op]
    except KeyError:
        raise UsageError(f"unknown interval op {op!r}, expected delta, cap, cup or minus")
    return sweep((A, B), law)


def member(A: IntervalUnion, x: Fraction | int) -> Bit:
    x = ext(x)
    if not is_finite(x):
        raise UsageError("infinity is not a point of R")
    return int(_covers(A, x))


def sup_is_infinite(A: IntervalUnion) -> Bit:
    return int(bool(A.components) and A.components[-1][1] == POS_INF)


def has_finite_endpoints(A: IntervalUnion) -> bool:
    """Membership in the subring of unions with finite endpoints."""
    return all(is_finite(p) for p in A.endpoints())
