from fractions import Fraction

import pytest
from hypothesis import given

from errors import UsageError
from interval_ring import NEG_INF, POS_INF, interval
from step_function import (
    ZERO,
    BinaryStepFunction,
    SparsePointFunction,
    indicator_oc,
    sf_combine,
    sf_eval,
    sf_left_limit,
    sf_normalize,
    sf_not,
    support_cells,
    value_after,
    window_count,
)
from strategies import rationals, sparse_functions, step_functions

LAWS = {"or": lambda a, b: a | b, "and": lambda a, b: a & b, "xor": lambda a, b: a ^ b, "xnor": lambda a, b: 1 ^ a ^ b}


def test_indicator_of_left_open_interval():
    f = sf_normalize(0, [0, 1])
    assert f == indicator_oc(0, 1)
    assert [f(Fraction(t)) for t in (-1, 0, Fraction(1, 2), 1, 2)] == [0, 0, 1, 1, 0]
    assert (sf_eval(f, NEG_INF), sf_eval(f, POS_INF)) == (0, 0)
    assert (value_after(f, 0), value_after(f, 1)) == (1, 0)
    assert support_cells(f) == [(0, 1)]
    assert indicator_oc(1, 0) == ZERO


def test_prolongation_to_infinity():
    f = sf_normalize(1, [2])
    assert sf_eval(f, POS_INF) == 0
    assert sf_left_limit(f, 2) == 1
    assert support_cells(f) == [(NEG_INF, 2)]
    assert support_cells(sf_not(f)) == [(2, POS_INF)]


def test_normalize_cancels_pairs():
    assert sf_normalize(1, [2, 2, 3]).toggles == (Fraction(3),)
    assert sf_normalize(0, ["1/2", 0]).toggles == (Fraction(0), Fraction(1, 2))
    with pytest.raises(UsageError):
        sf_normalize(0, ["inf"])
    with pytest.raises(UsageError):
        BinaryStepFunction(0, (Fraction(2), Fraction(1)))
    with pytest.raises(UsageError):
        BinaryStepFunction(2)


@given(step_functions, step_functions, rationals)
def test_combine_is_pointwise(f, g, t):
    for law, op in LAWS.items():
        h = sf_combine(law, f, g)
        assert h(t) == op(f(t), g(t))
        assert sf_eval(h, POS_INF) == op(sf_eval(f, POS_INF), sf_eval(g, POS_INF))
        assert list(h.toggles) == sorted(set(h.toggles))


def test_sparse_functions():
    f = SparsePointFunction.of([2, 1, 2])
    assert f.support == (1, 2)
    assert (f(1), f(3)) == (1, 0)
    assert f.restrict(interval(0, 2)).support == (1,)
    assert f.combine("xor", SparsePointFunction.of([2, 5])).support == (1, 5)
    with pytest.raises(UsageError):
        f.combine("xnor", f)
    with pytest.raises(UsageError):
        SparsePointFunction.of([(1,), (1, 2)])
    assert SparsePointFunction.of([(0, 1), (1, 0)]).dimension == 2


def test_sparse_points_are_exact():
    f = SparsePointFunction.of([2, 1])
    assert all(type(x) is Fraction for x in f.support)
    g = SparsePointFunction.of([(0, 1)])
    assert all(type(c) is Fraction for c in g.support[0])
    assert SparsePointFunction.of(["b", "a"]).support == ("a", "b")


@given(sparse_functions, rationals, rationals)
def test_window_count(f, a, b):
    expected = sum(1 for x in f.support if a <= x < b)
    assert window_count(f.support, a, b) == expected
