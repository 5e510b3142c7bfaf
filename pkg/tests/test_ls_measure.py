from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from errors import UsageError
from interval_ring import EMPTY, NEG_INF, POS_INF, interval, normalize
from ls_measure import (
    LSMeasure,
    as_measure,
    chain_family,
    delta_of,
    descending_telescope_family,
    endpoint_xor,
    ls_cdf,
    ls_eval,
    ls_structured_countable_check,
    refine,
    telescope_family,
)
from step_function import sf_eval, sf_normalize
from strategies import raw_intervals, rationals, step_functions, windows


@pytest.fixture
def m() -> LSMeasure:
    return LSMeasure(sf_normalize(0, [0, 1]))


def test_values(m):
    assert ls_eval(m, normalize([(NEG_INF, Fraction(1, 2))])) == 1
    assert ls_eval(m, interval(0, 1)) == 1
    assert ls_eval(m, interval(NEG_INF, POS_INF)) == 0
    assert ls_eval(m, normalize([(NEG_INF, Fraction(1, 2)), (2, 5)])) == 1
    assert ls_eval(m, EMPTY) == 0
    assert as_measure(m)(interval(0, 1)) == 1


def test_cdf(m):
    g = ls_cdf(m, NEG_INF)
    assert g == sf_normalize(0, [0, 1])
    assert ls_cdf(m, Fraction(1, 2)).toggles == (Fraction(1),)
    with pytest.raises(UsageError):
        ls_cdf(m, POS_INF)


def test_refine():
    assert refine([(0, 2)], [1, 5]) == [(0, 1), (1, 2)]
    assert refine([(NEG_INF, 0)], [-1]) == [(NEG_INF, -1), (-1, 0)]


def test_telescope_families(m):
    fam = telescope_family(m.f.toggles, -1, 2)
    assert fam.union == interval(-1, 2)
    assert fam.produce(0) == interval(-1, Fraction(1, 2))
    report = ls_structured_countable_check(m, fam, 32)
    assert report.passed
    assert report.ones == (0, 1)
    assert (report.union_value, report.xor_sum) == (0, 0)
    with pytest.raises(UsageError):
        telescope_family((), NEG_INF, 0)
    with pytest.raises(UsageError):
        telescope_family((), 1, 1)
    with pytest.raises(UsageError):
        descending_telescope_family((), POS_INF)


def test_chain_over_the_whole_line():
    m = LSMeasure(sf_normalize(1, [-3, Fraction(5, 2)]))
    fam = chain_family(m.f.toggles, interval(NEG_INF, POS_INF))
    report = ls_structured_countable_check(m, fam, 16)
    assert report.passed
    assert report.union_value == 0


@given(step_functions, raw_intervals, st.lists(rationals, min_size=1, max_size=5))
def test_value_does_not_depend_on_the_decomposition(f, raw, cuts):
    m = LSMeasure(f)
    A = normalize(raw)
    assert endpoint_xor(f, refine(A.components, cuts)) == ls_eval(m, A)
    assert ls_eval(m, delta_of(raw)) == endpoint_xor(f, raw)


@given(step_functions, rationals, windows())
def test_cdf_round_trip(f, a, window):
    m = LSMeasure(f)
    g = ls_cdf(m, a)
    c, d = window
    c, d = max(c, a), max(d, a) + 1
    assert sf_eval(g, c) ^ sf_eval(g, d) == ls_eval(m, interval(c, d))


@given(step_functions, windows(), st.sampled_from([Fraction(1, 2), Fraction(1, 3), Fraction(2, 3)]))
def test_countable_additivity_on_telescopes(f, window, ratio):
    m = LSMeasure(f)
    a, b = window
    for fam in (
        telescope_family(f.toggles, a, b, ratio),
        telescope_family(f.toggles, a, POS_INF),
        descending_telescope_family(f.toggles, b),
    ):
        assert ls_structured_countable_check(m, fam, 16).passed
