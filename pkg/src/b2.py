"""The binary Boole algebra B2 = {0, 1} and its folds."""

from dataclasses import dataclass
from typing import Callable, Iterable

from errors import UsageError

Bit = int

LAWS = ("not", "or", "and", "xor", "xnor")

_BINARY: dict[str, Callable[[int, int], int]] = {
    "or": lambda a, b: a | b,
    "and": lambda a, b: a & b,
    "xor": lambda a, b: a ^ b,
    "xnor": lambda a, b: 1 ^ a ^ b,
}


def check_bit(value: int) -> Bit:
    # bool is an int subclass; the interface only takes 0/1 integers
    if isinstance(value, bool) or value not in (0, 1):
        raise UsageError(f"not a bit: {value!r}")
    return value


def parity(n: int) -> Bit:
    """pi(n): 1 iff n is odd."""
    return n & 1


def b2_law(law: str, a: Bit, b: Bit | None = None) -> Bit:
    """Apply one of the five laws of B2."""
    check_bit(a)
    if law == "not":
        if b is not None:
            raise UsageError("law 'not' takes one argument")
        return 1 ^ a
    if law not in _BINARY:
        raise UsageError(f"unknown law {law!r}, expected one of {', '.join(LAWS)}")
    if b is None:
        raise UsageError(f"law {law!r} takes two arguments")
    return _BINARY[law](a, check_bit(b))


def binary_law(law: str) -> Callable[[int, int], int]:
    """The unchecked two-argument function of a law, for inner loops."""
    try:
        return _BINARY[law]
    except KeyError:
        raise UsageError(f"unknown binary law {law!r}")


def truth_table() -> list[tuple[int, int, tuple[int, ...]]]:
    """Rows (a, b, values in LAWS order); `not` is applied to a."""
    rows = []
    for a in (0, 1):
        for b in (0, 1):
            values = tuple(
                b2_law(law, a) if law == "not" else b2_law(law, a, b) for law in LAWS
            )
            rows.append((a, b, values))
    return rows


@dataclass(frozen=True)
class FinitelySupportedBits:
    """A family (a_n) with a_n = 1 exactly on `ones`."""

    ones: frozenset[int]

    @classmethod
    def of(cls, ones: Iterable[int]) -> "FinitelySupportedBits":
        return cls(frozenset(ones))

    def __getitem__(self, n: int) -> Bit:
        return 1 if n in self.ones else 0


@dataclass(frozen=True)
class CofinitelySupportedBits:
    """A family (a_n) with a_n = 0 exactly on `zeros`."""

    zeros: frozenset[int]

    @classmethod
    def of(cls, zeros: Iterable[int]) -> "CofinitelySupportedBits":
        return cls(frozenset(zeros))

    def __getitem__(self, n: int) -> Bit:
        return 0 if n in self.zeros else 1


def xor_fold(a: FinitelySupportedBits) -> Bit:
    """Summation modulo 2 of a finitely supported family; 0 when empty."""
    return parity(len(a.ones))


def xnor_fold(a: CofinitelySupportedBits) -> Bit:
    """Coincidence fold of a cofinitely supported family; 1 when no zeros."""
    return 1 ^ parity(len(a.zeros))


def xnor_chain(bits: Iterable[Bit]) -> Bit:
    """Fold a finite nonempty bit list with xnor, left to right."""
    it = iter(bits)
    try:
        acc = check_bit(next(it))
    except StopIteration:
        raise UsageError("xnor_chain needs at least one bit")
    for bit in it:
        acc = 1 ^ acc ^ check_bit(bit)
    return acc
