"""Hypothesis strategies for exact-rational values."""

from fractions import Fraction

from hypothesis import strategies as st

from interval_ring import NEG_INF, POS_INF, normalize
from step_function import SparsePointFunction, sf_normalize

rationals = st.fractions(min_value=-10, max_value=10, max_denominator=8)
extended = st.one_of(rationals, rationals, rationals, st.just(NEG_INF), st.just(POS_INF))
raw_intervals = st.lists(st.tuples(extended, extended), max_size=5)
interval_unions = raw_intervals.map(normalize)
step_functions = st.builds(sf_normalize, st.integers(0, 1), st.lists(rationals, max_size=6))
sparse_functions = st.lists(rationals, max_size=6).map(SparsePointFunction.of)
bits = st.integers(0, 1)


@st.composite
def windows(draw) -> tuple[Fraction, Fraction]:
    a = draw(rationals)
    return a, a + draw(st.fractions(min_value=Fraction(1, 8), max_value=8, max_denominator=8))
