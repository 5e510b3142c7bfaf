from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from derivable import (
    BoxCarrier,
    BoxUnion,
    DerivableMeasure,
    LocallyFiniteSet,
    analytic_epsilon,
    as_abstract,
    bx_member,
    bx_op,
    derivability_probe,
    derivative_at,
    derivative_support,
    diameter,
    integral_derivable,
    integral_on_derivable,
    locfin_count,
    mu_locfin,
    points_in,
    random_locfin,
    reconstruct_measure,
    same_set,
)
from errors import DerivabilityError, DomainError, StructuralError, UsageError
from step_function import SparsePointFunction


def boxes(*sides_list, dimension=None):
    return BoxUnion.of(sides_list, dimension)


def test_box_union_canonical_form():
    square = ((0, 1), (0, 1))
    assert len(boxes(square, square).boxes) == 1
    assert not boxes(((0, 0), (0, 1)), dimension=2)
    with pytest.raises(UsageError):
        BoxUnion.of([])
    with pytest.raises(UsageError):
        BoxUnion.of([((0, 1),) * 4])
    with pytest.raises(UsageError):
        BoxUnion.of([((0, "inf"),)])


def test_box_ops_merge_cells():
    left, right = boxes(((0, 1), (0, 1))), boxes(((1, 2), (0, 1)))
    assert bx_op("cup", left, right) == boxes(((0, 2), (0, 1)))
    assert not bx_op("cap", left, right)
    big = boxes(((0, 2), (0, 2)))
    corner = bx_op("minus", big, left)
    assert bx_member(corner, (0, 0)) == 0
    assert bx_member(corner, (Fraction(3, 2), Fraction(1, 2))) == 1
    assert same_set(bx_op("cup", corner, left), big)
    with pytest.raises(StructuralError):
        bx_op("cup", left, boxes(((0, 1),)))
    with pytest.raises(UsageError):
        bx_op("theta", left, right)


def test_diameter():
    assert diameter(boxes(((0, 1), (0, 2)))) == 5
    with pytest.raises(DomainError):
        diameter(BoxUnion(2))


def test_lattice_counts():
    H = LocallyFiniteSet.lattice(1, (0, 0))
    A = boxes(((0, 2), (0, 3)))
    assert locfin_count(H, A) == 6
    assert len(points_in(H, A)) == 6
    assert mu_locfin(H)(A) == 0
    halves = LocallyFiniteSet.lattice(Fraction(1, 2), (0,))
    assert points_in(halves, boxes(((0, 1),))) == ((Fraction(0),), (Fraction(1, 2),))
    overlapping = boxes(((0, 2), (0, 1)), ((1, 3), (0, 1)))
    assert locfin_count(H, overlapping) == 3


def test_locally_finite_set_validation():
    with pytest.raises(UsageError):
        LocallyFiniteSet.lattice(0, (0,))
    with pytest.raises(StructuralError):
        LocallyFiniteSet.finite([(0,), (0, 1)])
    with pytest.raises(StructuralError):
        locfin_count(LocallyFiniteSet.finite([(0, 0)]), boxes(((0, 1),)))


def test_parity_measure_and_derivative():
    H = LocallyFiniteSet.finite([(0, 0), (1, 1)])
    mu = mu_locfin(H)
    assert mu(boxes(((0, 2), (0, 2)))) == 0
    assert mu(boxes(((0, 1), (0, 1)))) == 1
    assert derivative_at(mu, (1, 1)) == 1
    assert derivative_at(mu, (Fraction(1, 2), 0)) == 0
    assert derivative_support(mu, boxes(((0, 2), (0, 2)))) == ((0, 0), (1, 1))
    with pytest.raises(DomainError):
        mu(boxes(((0, 1),)))


def test_probed_derivative(rng):
    H = LocallyFiniteSet.finite([(0, 0), (1, 1)])
    mu = mu_locfin(H)
    blind = DerivableMeasure("probed", 2, mu.fn)
    assert analytic_epsilon(mu, (0, 0)) == Fraction(1, 2)
    assert derivative_at(blind, (0, 0), analytic_epsilon(mu, (0, 0)), 100, rng) == 1
    assert derivative_at(blind, (5, 5), analytic_epsilon(mu, (5, 5)), 100, rng) == 0


def test_non_derivable_measure(rng):
    reaches_left = DerivableMeasure(
        "reaches left of 0", 1, lambda A: int(any(box[0][0] < 0 for box in A.boxes))
    )
    report = derivability_probe(reaches_left, 0, Fraction(1, 100), 200, rng)
    assert not report.passed
    with pytest.raises(DerivabilityError) as err:
        derivative_at(reaches_left, 0, Fraction(1, 100), 200, rng)
    assert err.value.witness is not None


def test_lattice_epsilon():
    mu = mu_locfin(LocallyFiniteSet.lattice(1, (0, 0)))
    assert analytic_epsilon(mu, (0, 0)) == Fraction(1, 2)
    assert analytic_epsilon(mu, (Fraction(1, 2), 0)) == Fraction(1, 4)


def test_reconstruction_and_integrals():
    g = SparsePointFunction.of([(0, 0), (1, 1)])
    rebuilt = reconstruct_measure(g)
    assert rebuilt(boxes(((0, 1), (0, 1)))) == 1
    mu = mu_locfin(LocallyFiniteSet.finite([(1, 1), (2, 2)]))
    assert integral_derivable(g, mu) == 1
    assert integral_on_derivable(boxes(((0, 1), (0, 1))), g, mu) == 0
    assert integral_on_derivable(boxes(((0, 3), (0, 3))), LocallyFiniteSet.lattice(1, (0, 0)), mu) == 0
    with pytest.raises(DomainError):
        integral_derivable(LocallyFiniteSet.lattice(1, (0, 0)), mu)


@settings(max_examples=25)
@given(st.integers(0, 2**32 - 1), st.integers(1, 3), st.booleans())
def test_parity_measures_are_additive(seed, dimension, lattice):
    rng = np.random.default_rng(seed)
    H = random_locfin(rng, min(dimension, 2) if lattice else dimension, lattice)
    mu = as_abstract(mu_locfin(H))
    carrier = BoxCarrier(H.dimension)
    A, B = carrier.sample(rng), carrier.sample(rng)
    assert mu(carrier.cap(A, B)) ^ mu(carrier.minus(A, B)) == mu(A)
    assert mu(carrier.delta(A, B)) == mu(A) ^ mu(B)
    assert len(derivative_support(mu_locfin(H), A)) == locfin_count(H, A)


def test_lattice_rebuilt_from_its_support_in_a_window():
    H = LocallyFiniteSet.lattice(Fraction(1, 2), (0, 0))
    mu = mu_locfin(H)
    window = boxes(((-1, 1), (-1, 1)))
    support = derivative_support(mu, window)
    assert len(support) == 16
    rebuilt = reconstruct_measure(LocallyFiniteSet.finite(support, 2))
    for A in (boxes(((0, 1), (0, 1))), boxes(((-1, 0), (0, 1))), boxes(((-1, 1), (-1, Fraction(1, 2))))):
        assert rebuilt(A) == mu(A)
