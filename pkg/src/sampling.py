"""Seeded random draws of exact-rational objects.

Every sampler takes a `numpy.random.Generator`; nothing here touches the
global random state.
"""

from fractions import Fraction

import numpy as np

from interval_ring import NEG_INF, POS_INF, IntervalUnion, normalize
from step_function import BinaryStepFunction, SparsePointFunction, sf_normalize

DENOMINATORS = (1, 2, 3, 4, 6, 8)


def random_rational(rng: np.random.Generator, lo: int = -10, hi: int = 10) -> Fraction:
    """A rational in [lo, hi) with a small denominator."""
    den = int(rng.choice(DENOMINATORS))
    return Fraction(int(rng.integers(lo * den, hi * den)), den)


def random_rationals(rng: np.random.Generator, count: int, lo: int = -10, hi: int = 10) -> list[Fraction]:
    return [random_rational(rng, lo, hi) for _ in range(count)]


def random_raw_intervals(
    rng: np.random.Generator, max_parts: int = 4, lo: int = -10, hi: int = 10, infinite: bool = True
) -> list[tuple]:
    """Unsorted, possibly overlapping or empty [[a, b)) pairs."""
    pairs = []
    for _ in range(int(rng.integers(0, max_parts + 1))):
        a, b = random_rational(rng, lo, hi), random_rational(rng, lo, hi)
        if infinite and rng.random() < 0.1:
            a = NEG_INF
        if infinite and rng.random() < 0.1:
            b = POS_INF
        pairs.append((a, b))
    return pairs


def random_interval_union(
    rng: np.random.Generator, max_parts: int = 4, lo: int = -10, hi: int = 10, infinite: bool = True
) -> IntervalUnion:
    return normalize(random_raw_intervals(rng, max_parts, lo, hi, infinite))


def random_step_function(
    rng: np.random.Generator, max_toggles: int = 6, lo: int = -10, hi: int = 10
) -> BinaryStepFunction:
    count = int(rng.integers(0, max_toggles + 1))
    return sf_normalize(int(rng.integers(0, 2)), random_rationals(rng, count, lo, hi))


def random_points(rng: np.random.Generator, max_points: int = 6, lo: int = -10, hi: int = 10) -> list[Fraction]:
    return sorted(set(random_rationals(rng, int(rng.integers(0, max_points + 1)), lo, hi)))


def random_sparse(
    rng: np.random.Generator, max_points: int = 6, lo: int = -10, hi: int = 10, dimension: int = 1
) -> SparsePointFunction:
    if dimension == 1:
        return SparsePointFunction.of(random_points(rng, max_points, lo, hi))
    count = int(rng.integers(0, max_points + 1))
    return SparsePointFunction.of(
        tuple(random_rational(rng, lo, hi) for _ in range(dimension)) for _ in range(count)
    )


def random_box(
    rng: np.random.Generator, dimension: int, lo: int = -5, hi: int = 5
) -> tuple[tuple[Fraction, Fraction], ...]:
    """Corners of one nonempty box as ((a_1, b_1), ..., (a_n, b_n))."""
    sides = []
    for _ in range(dimension):
        a = random_rational(rng, lo, hi)
        b = a + Fraction(int(rng.integers(1, 9)), int(rng.choice(DENOMINATORS)))
        sides.append((a, b))
    return tuple(sides)


def random_label_set(rng: np.random.Generator, pool: tuple, max_size: int = 6) -> frozenset:
    if not pool:
        return frozenset()
    size = int(rng.integers(0, min(max_size, len(pool)) + 1))
    picks = rng.choice(len(pool), size=size, replace=False)
    return frozenset(pool[int(i)] for i in picks)
