from fractions import Fraction

import pytest

from b2 import parity
from carriers import FinitePointCarrier, IntervalCarrier
from catalog import CatalogSpec, catalog_build
from errors import DiagnosticError, DomainError, PreconditionError, UsageError
from interval_ring import POS_INF, interval, member
from ls_measure import telescope_family
from set_function import (
    AbstractMeasure,
    MonotoneFamily,
    TabulatedSetFunction,
    additive_properties_report,
    additivity_witness,
    certify_measure_via_monotone,
    check_ascending_continuity,
    check_countable_family,
    check_descending_continuity,
    dual_function,
    finite_family,
    is_additive,
    is_additive_star,
    linear_functionals,
    partial_unions,
    remainders,
    sample_additivity,
    sample_additivity_star,
    tabulate,
)
from set_ring import FiniteUniverse, SetRingFamily


@pytest.fixture
def ring() -> SetRingFamily:
    return SetRingFamily.power_set(FiniteUniverse.of("abc"))


@pytest.fixture
def counting() -> AbstractMeasure:
    return AbstractMeasure("parity", FinitePointCarrier(), lambda A: parity(len(A)))


def test_linear_functionals_are_the_additive_functions(ring):
    tables = linear_functionals(3)
    assert len(tables) == 8
    additive = set()
    for code in range(1 << 8):
        mu = TabulatedSetFunction.of(ring, lambda m: (code >> m) & 1)
        if is_additive(mu):
            additive.add(tuple(mu(m) for m in ring.members))
    assert additive == tables


def test_additivity_witness():
    ring = SetRingFamily.power_set(FiniteUniverse.of("a"))
    ones = TabulatedSetFunction.of(ring, lambda m: 1)
    assert is_additive(ones) == 0
    assert additivity_witness(ones) == (0, 0)


def test_dual_of_an_additive_function_is_additive_star(ring):
    for table in linear_functionals(3):
        mu = TabulatedSetFunction.of(ring, lambda m, t=table: t[m])
        star = dual_function(mu)
        assert star.ring.law_pair == "theta_cup"
        assert is_additive_star(star) == 1
        assert additive_properties_report(mu).passed
        assert [item.item for item in additive_properties_report(star).items] == [4, 5, 6]
        assert additive_properties_report(star).passed


def test_properties_need_additivity(ring):
    ones = TabulatedSetFunction.of(ring, lambda m: 1)
    with pytest.raises(PreconditionError):
        additive_properties_report(ones)
    with pytest.raises(PreconditionError):
        is_additive_star(ones)


def test_tabulated_function_validation(ring):
    with pytest.raises(UsageError):
        TabulatedSetFunction(ring, {0: 0})
    mu = TabulatedSetFunction.of(ring, lambda m: 0)
    small = SetRingFamily.of(ring.universe, [0, 1], "delta_cap")
    with pytest.raises(DomainError):
        TabulatedSetFunction.of(small, lambda m: 0)(2)
    assert mu(5) == 0


def test_tabulate(ring):
    dirac = AbstractMeasure("dirac(b)", FinitePointCarrier("abc"), lambda A: int("b" in A))
    mu = tabulate(dirac, ring)
    assert [mu(m) for m in ring.members] == [0, 0, 1, 1, 0, 0, 1, 1]


def test_domain_is_enforced():
    mu = AbstractMeasure("dirac", FinitePointCarrier((1, 2)), lambda A: int(1 in A))
    with pytest.raises(DomainError):
        mu(frozenset({5}))


def test_countable_check_on_a_finite_family(counting):
    sets = [frozenset({1}), frozenset({2}), frozenset({3})]
    report = check_countable_family(counting, finite_family(sets, frozenset({1, 2, 3}), frozenset()), 8)
    assert report.passed
    assert (report.union_value, report.xor_sum, report.ones) == (1, 1, (0, 1, 2))


def test_countable_check_diagnostics(counting):
    overlapping = finite_family([frozenset({1, 2}), frozenset({2})], frozenset({1, 2}), frozenset())
    with pytest.raises(DiagnosticError) as err:
        check_countable_family(counting, overlapping, 4)
    assert err.value.witness[:2] == (0, 1)

    with pytest.raises(PreconditionError):
        check_countable_family(counting, overlapping, 1)

    bounded = AbstractMeasure("dirac", FinitePointCarrier((1, 2)), lambda A: int(1 in A))
    outside = finite_family([frozenset({1})], frozenset({5}), frozenset())
    with pytest.raises(DiagnosticError):
        check_countable_family(bounded, outside, 2)


def test_sampling(counting, rng):
    assert sample_additivity(counting, 200, rng).passed
    ones = AbstractMeasure("ones", FinitePointCarrier(), lambda A: 1)
    report = sample_additivity(ones, 200, rng)
    assert not report.passed
    assert report.checked == 1
    with pytest.raises(PreconditionError):
        sample_additivity_star(counting, 10, rng)


class _UncoveredCarrier(FinitePointCarrier):
    law_pair = "theta_cup"


def test_sampling_star_needs_covering_pairs(rng):
    mu = AbstractMeasure("ones", _UncoveredCarrier(name="uncovered"), lambda A: 1)
    with pytest.raises(PreconditionError, match="uncovered has no covering pairs"):
        sample_additivity_star(mu, 5, rng)


def test_sampling_star_on_cofinite_sets(rng):
    mu = catalog_build(CatalogSpec(construction="cofinite_star"))
    assert sample_additivity_star(mu, 100, rng).passed


def _dirac() -> AbstractMeasure:
    return AbstractMeasure("dirac(1/2)", IntervalCarrier(), lambda A: member(A, Fraction(1, 2)))


def test_monotone_continuity_of_a_measure():
    carrier = IntervalCarrier()
    fam = telescope_family((Fraction(1, 2),), 0, 1)
    asc = check_ascending_continuity(_dirac(), partial_unions(carrier, fam), 16)
    assert asc.values[:3] == (0, 1, 1)
    assert asc.converges
    desc = check_descending_continuity(_dirac(), remainders(carrier, fam), 16)
    assert desc.values[:3] == (1, 1, 0)
    assert desc.converges
    suite = [partial_unions(carrier, fam), partial_unions(carrier, telescope_family((Fraction(1, 2),), 0, POS_INF))]
    assert certify_measure_via_monotone(_dirac(), "ascending", suite, 16) == 1
    with pytest.raises(UsageError):
        certify_measure_via_monotone(_dirac(), "sideways", suite, 16)


def test_descending_continuity_fails_for_sup_at_infinity():
    carrier = IntervalCarrier()
    sup = AbstractMeasure("sup", carrier, lambda A: int(bool(A.components) and A.components[-1][1] == POS_INF))
    rays = MonotoneFamily(lambda n: interval(n, POS_INF), interval(0, 0), 0, "rays")
    report = check_descending_continuity(sup, rays, 8)
    assert report.eventually_constant
    assert (report.limit_value, report.measure_of_limit) == (1, 0)
    assert not report.converges


def test_monotone_family_must_be_monotone():
    wrong = MonotoneFamily(lambda n: interval(n, n + 1), interval(0, POS_INF), 0, "steps")
    with pytest.raises(DiagnosticError):
        check_ascending_continuity(_dirac(), wrong, 4)
    with pytest.raises(PreconditionError):
        check_ascending_continuity(_dirac(), MonotoneFamily(lambda n: interval(0, 1), interval(0, 1), 5), 3)
