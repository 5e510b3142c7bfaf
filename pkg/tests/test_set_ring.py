import pytest
from hypothesis import given
from hypothesis import strategies as st

from errors import PreconditionError, StructuralError, UsageError
from set_ring import (
    FiniteUniverse,
    SetRingFamily,
    char_function,
    complement_family,
    generate_ring,
    is_set_algebra,
    is_set_ring,
    ring_unit,
    set_op,
    support,
)


@pytest.fixture
def universe() -> FiniteUniverse:
    return FiniteUniverse.of((1, 2, 3))


def test_theta(universe):
    A, B = universe.subset([1]), universe.subset([2])
    assert set_op("theta", A, B).labels == (3,)
    assert set_op("delta", A, B).labels == (1, 2)
    assert set_op("complement", A).labels == (2, 3)


def test_operands_on_different_universes(universe):
    other = FiniteUniverse.of(("a",))
    with pytest.raises(StructuralError):
        set_op("cup", universe.subset([1]), other.subset(["a"]))


def test_universe_validation():
    with pytest.raises(UsageError):
        FiniteUniverse.of(("a", "a"))
    with pytest.raises(UsageError):
        FiniteUniverse.of(range(5), cap=4)
    with pytest.raises(UsageError):
        FiniteUniverse.of(("a",)).index("b")


def test_ring_recognition(universe):
    assert is_set_ring(universe, [0, 1], "delta_cap") == 1
    assert is_set_ring(universe, [1, 2], "delta_cap") == 0
    assert is_set_ring(universe, [7, 6], "theta_cup") == 1
    with pytest.raises(PreconditionError):
        is_set_ring(universe, [], "delta_cap")


def test_algebra_recognition(universe):
    assert is_set_algebra(universe, universe.power_set(), "delta_cap") == 1
    assert is_set_algebra(universe, [0, 1], "delta_cap") == 0
    assert is_set_algebra(universe, [6, 7], "theta_cup") == 0
    with pytest.raises(PreconditionError):
        is_set_algebra(universe, [1, 2], "delta_cap")


def test_ring_unit(universe):
    assert ring_unit(SetRingFamily.power_set(universe)) == 7
    assert ring_unit(SetRingFamily.power_set(universe, "theta_cup")) == 0
    with pytest.raises(PreconditionError):
        ring_unit(SetRingFamily.of(universe, [0, 1], "delta_cap"))


def test_generated_rings(universe):
    assert generate_ring(universe, [1, 2], "delta_cap").members == (0, 1, 2, 3)
    assert generate_ring(universe, [6], "theta_cup").members == (6, 7)
    with pytest.raises(PreconditionError):
        generate_ring(universe, [], "delta_cap")


def test_complement_family(universe):
    ring = SetRingFamily.of(universe, [0, 1], "delta_cap")
    dual = complement_family(ring)
    assert dual == SetRingFamily.of(universe, [6, 7], "theta_cup")
    assert complement_family(dual) == ring


def test_non_ring_family_is_rejected(universe):
    with pytest.raises(StructuralError):
        SetRingFamily.of(universe, [1, 2], "delta_cap")


def test_char_function_isomorphism(universe):
    for bits in universe.power_set():
        A = universe.subset(universe.labels_of(bits))
        chi = char_function(A)
        assert support(chi, universe) == A
        assert support(chi.table(), universe) == A


@given(st.lists(st.integers(0, 7), min_size=1, max_size=8))
def test_ring_duality(members):
    universe = FiniteUniverse.of("abc")
    complements = [7 & ~m for m in members]
    assert is_set_ring(universe, members, "delta_cap") == is_set_ring(universe, complements, "theta_cup")


@given(st.lists(st.integers(0, 7), min_size=1, max_size=4))
def test_generated_ring_is_a_ring_containing_generators(generators):
    universe = FiniteUniverse.of("abc")
    ring = generate_ring(universe, generators, "delta_cap")
    assert set(generators) <= set(ring.members)
    assert is_set_ring(universe, ring.members, "delta_cap") == 1
