from fractions import Fraction

import pytest
from hypothesis import given

from b2 import parity
from derivable import BoxUnion, LocallyFiniteSet, mu_locfin
from errors import DomainError, IntegrabilityError, UsageError
from integration import (
    FunctionFamily,
    IndicatorFunction,
    MeasurableFunction,
    MeasurableSpace,
    Piece,
    ae_equal,
    convergence_check,
    dual_left_integral,
    f_mu,
    full_integral,
    indefinite_integral,
    integral,
    integral_on,
    is_measurable,
    left_integral,
    left_primitive,
    riemann_integrable,
    window_pieces,
)
from interval_ring import POS_INF, interval, member
from ls_measure import LSMeasure, ls_eval
from set_function import TabulatedSetFunction
from set_ring import CharFunction, FiniteUniverse, SetRingFamily
from step_function import SparsePointFunction, sf_normalize
from strategies import rationals, sparse_functions, windows


@pytest.fixture
def ring() -> SetRingFamily:
    return SetRingFamily.power_set(FiniteUniverse.of("abc"))


def test_riemann_on_points():
    f = SparsePointFunction.of([1, 2, 5])
    assert left_integral(f, 0, 3) == 0
    assert left_integral(f, 0, 6) == 1
    assert left_integral(f, 2, POS_INF) == 0
    assert full_integral(f) == 1
    assert indefinite_integral(f)(interval(0, 3)) == 0


def test_window_pieces_of_a_step_function():
    f = sf_normalize(0, [0, 1])
    assert window_pieces(f, interval(0, 2)) == [Piece(0, False, 1, True)]
    assert riemann_integrable(f, interval(0, 2)) == 0
    with pytest.raises(IntegrabilityError):
        left_integral(f, 0, 2)
    assert window_pieces(f, interval(1, 2)) == [Piece(1, True, 1, True)]
    assert left_integral(f, 1, 2) == 1
    assert left_integral(f, 2, 3) == 0
    with pytest.raises(IntegrabilityError):
        full_integral(f)


def test_indicator_riemann():
    f = IndicatorFunction(interval(0, 1))
    assert riemann_integrable(f, interval(2, 3)) == 1
    assert riemann_integrable(f, interval(0, 3)) == 0


def test_primitive_and_dual():
    F = left_primitive(SparsePointFunction.of([1, 2]), 0)
    assert F == sf_normalize(0, [1, 2])
    assert left_primitive(SparsePointFunction.of([-1, 2]), 0).toggles == (Fraction(2),)
    assert dual_left_integral(SparsePointFunction.of([1]), 0, 3) == 0
    assert dual_left_integral(SparsePointFunction.of([1]), 2, 3) == 1
    with pytest.raises(UsageError):
        left_primitive(SparsePointFunction.of([1]), POS_INF)
    with pytest.raises(DomainError):
        left_primitive(SparsePointFunction.of([(1, 2)]), 0)


def test_primitive_of_integer_points():
    for f in (SparsePointFunction.of([1, 2]), SparsePointFunction((1, 2))):
        F = left_primitive(f, 0)
        assert F.toggles == (Fraction(1), Fraction(2))
        for t in (0, 1, Fraction(3, 2), 2, 3):
            assert F(t) == left_integral(f, 0, t)


@given(sparse_functions, rationals, windows())
def test_primitive_generates_the_integral(f, a, window):
    F = left_primitive(f, a)
    c, d = window
    c, d = max(c, a), max(d, a) + 1
    assert ls_eval(LSMeasure(F), interval(c, d)) == left_integral(f, c, d)


def test_finite_space(ring):
    u = ring.universe
    space = MeasurableSpace.finite(ring)
    dirac = TabulatedSetFunction.of(ring, lambda m: m & 1)
    f = MeasurableFunction(CharFunction(u, 0b011), space)
    g = MeasurableFunction(CharFunction(u, 0b110), space)
    assert integral(f, dirac) == 1
    assert integral(g, dirac) == 0
    assert integral_on(0b110, f, dirac) == 0
    assert ae_equal(g, MeasurableFunction(CharFunction(u, 0b100), space), dirac) == 1
    assert ae_equal(f, g, dirac) == 0
    weighted = f_mu(f, dirac)
    assert [weighted(m) for m in ring.members] == [integral_on(m, f, dirac) for m in ring.members]
    assert integral({"a": 1, "b": 0, "c": 1}, dirac, space) == 1


def test_support_must_be_in_the_ring(ring):
    small = SetRingFamily.of(ring.universe, [0, 1], "delta_cap")
    space = MeasurableSpace.finite(small)
    assert is_measurable(CharFunction(ring.universe, 0b010), space) == 0
    with pytest.raises(IntegrabilityError):
        MeasurableFunction(CharFunction(ring.universe, 0b010), space)
    with pytest.raises(UsageError):
        integral(CharFunction(ring.universe, 1), lambda A: 0)


def test_interval_space():
    space = MeasurableSpace.interval()
    dirac = lambda A: member(A, Fraction(3, 2))
    f = sf_normalize(0, [0, 2])
    assert is_measurable(f, space) == 0
    assert integral_on(interval(1, 2), f, dirac, space) == 1
    with pytest.raises(IntegrabilityError):
        integral_on(interval(0, 1), f, dirac, space)
    with pytest.raises(DomainError):
        integral_on(frozenset(), f, dirac, space)
    indicator = MeasurableFunction(IndicatorFunction(interval(1, 2)), space)
    assert integral(indicator, dirac) == 1


def test_box_space():
    mu = mu_locfin(LocallyFiniteSet.finite([(0, 0), (1, 1)]))
    space = MeasurableSpace.box(2)
    square = BoxUnion.of([((0, 2), (0, 2))])
    f = MeasurableFunction(IndicatorFunction(square), space)
    assert integral(f, mu) == 0
    assert integral_on(BoxUnion.of([((0, 1), (0, 1))]), f, mu) == 1


def test_convergence():
    space = MeasurableSpace.points()
    count = lambda A: parity(len(A))
    target = MeasurableFunction(SparsePointFunction.of([0]), space)
    shrinking = FunctionFamily(lambda n: SparsePointFunction.of([0] + list(range(20 + n, 23))), 3, "shrinking")
    for mode in ("decreasing", "in_measure"):
        report = convergence_check(shrinking, mode, target, count, 8)
        assert report.converges
        assert report.integrals[:4] == (0, 1, 0, 1)
    growing = FunctionFamily(lambda n: SparsePointFunction.of(range(min(n, 3))), 3, "growing")
    target = MeasurableFunction(SparsePointFunction.of(range(3)), space)
    assert convergence_check(growing, "increasing", target, count, 8).converges
    with pytest.raises(UsageError):
        convergence_check(growing, "sideways", target, count, 8)
