from fractions import Fraction
from typing import get_args

import pytest
from pydantic import ValidationError

from catalog import (
    COUNTEREXAMPLES,
    BinarySequence,
    CatalogSpec,
    CofiniteSet,
    Construction,
    StepRingSet,
    TailedPointSet,
    basis,
    catalog_build,
    catalog_list,
    certify_catalog,
    claim_of,
    counterexample_divergence,
    euler_parity,
    named_family,
    span,
    step_points,
    tailed_combine,
)
from errors import DomainError, UsageError
from interval_ring import interval
from set_ring import CharFunction, FiniteUniverse
from step_function import SparsePointFunction, indicator_oc


def build(construction: str, **params):
    return catalog_build(CatalogSpec(construction=construction, params=params))


@pytest.mark.parametrize("case", ["seq-3-6", "seq_3_6", "interval-3-13"])
@pytest.mark.parametrize("depth", [1, 64])
def test_counterexamples_diverge(case, depth):
    report = counterexample_divergence(case, depth)
    assert (report.union_value, report.xor_sum, report.countably_additive) == (1, 0, 0)


def test_unknown_counterexample():
    assert COUNTEREXAMPLES == ("seq_3_6", "interval_3_13")
    with pytest.raises(UsageError):
        counterexample_divergence("seq-4-1")


def test_catalog_list_covers_every_construction():
    assert [entry.construction for entry in catalog_list()] == list(get_args(Construction))


def test_unknown_construction():
    with pytest.raises(ValidationError):
        CatalogSpec(construction="lebesgue")
    with pytest.raises(UsageError):
        build("dirac", x0=1, y0=2)
    with pytest.raises(UsageError):
        build("dirac")


def test_dirac_measures():
    mu = build("dirac", x0=Fraction(1, 2))
    assert (mu(interval(0, 1)), mu(interval(1, 2))) == (1, 0)
    finite = build("dirac", x0="a", carrier="finite", universe=("a", "b"))
    assert finite(frozenset({"a"})) == 1
    with pytest.raises(DomainError):
        finite(frozenset({"z"}))
    with pytest.raises(UsageError):
        build("dirac", x0="z", carrier="finite", universe=("a", "b"))
    parity = build("dirac_sum", H=(0, Fraction(1, 2), 3))
    assert parity(interval(0, 1)) == 0
    assert parity(interval(0, 4)) == 1


def test_restriction():
    base = {"construction": "dirac_sum", "params": {"H": (0, Fraction(1, 2), 3)}}
    mu = build("restriction", base=base, set=interval(0, 1))
    assert mu(interval(-5, 5)) == 0
    assert mu(interval(0, Fraction(1, 4))) == 1
    with pytest.raises(UsageError):
        build("restriction", base=base, set=frozenset())


def test_sequence_measures():
    x = BinarySequence.of({2: 1, 4: 1})
    assert build("coord", k=2)(x) == 1
    assert build("coord_sum", H=(2, 4))(x) == 0
    assert build("limit")(x) == 0
    with pytest.raises(DomainError):
        build("limit")(BinarySequence(tail=1))
    assert build("limit", domain="S2_c")(BinarySequence(tail=1)) == 1
    with pytest.raises(UsageError):
        BinarySequence(((1, 0),), 0)
    assert basis(3)[3] == 1 and basis(3)[2] == 0


def test_tailed_sets():
    A = TailedPointSet.of("up", [Fraction(1, 2)], 0)
    assert build("inferiorly_finite", alpha=Fraction(5, 2))(A) == 0
    assert build("inferiorly_finite", alpha=2)(A) == 1
    B = TailedPointSet.of("down", [], 0)
    assert build("superiorly_finite", beta=Fraction(-3, 2))(B) == 0

    assert TailedPointSet.of("up", [-1], 0) == TailedPointSet("up", frozenset(), -1)
    assert TailedPointSet.of("up", [0], 0) == TailedPointSet("up", frozenset(), 1)

    C = tailed_combine("xor", TailedPointSet.of("up", [], 0), TailedPointSet.of("up", [], 2))
    assert C.start is None
    assert [x in C for x in (0, 1, 2, 5)] == [True, True, False, False]


def test_step_ring_parity():
    mu = build("step_ring_parity")
    assert mu(span(0, 1, True, True)) == 1
    assert mu(span(0, 1)) == 0
    assert mu(span(0, 1, False, False)) == 1
    assert mu(step_points([0, 5])) == 0
    assert euler_parity(StepRingSet()) == 0
    with pytest.raises(UsageError):
        StepRingSet(((Fraction(0), 0, 0),))


def test_other_constructions():
    assert build("cofinite_star")(CofiniteSet(frozenset({1, 2}))) == 1
    assert build("cofinite_star")(CofiniteSet(frozenset({1}))) == 0
    assert build("sym_sup")(interval(0, "inf")) == 1
    assert build("left_limit_eval", t=1)(indicator_oc(0, 1)) == 1
    assert build("indicator_integral", a=0, b=2)(SparsePointFunction.of([0, 1, 2])) == 0
    u = FiniteUniverse.of("abc")
    assert build("point_eval", x0="b", universe=("a", "b", "c"))(CharFunction(u, 0b010)) == 1
    assert build("finite_boolean")(frozenset({1, 2, 3})) == 1
    assert build("null", carrier="S2_0")(basis(0)) == 0


def test_claims():
    assert claim_of(CatalogSpec(construction="limit")) == "measure"
    assert claim_of(CatalogSpec(construction="limit", params={"domain": "S2_c"})) == "additive"
    assert claim_of(CatalogSpec(construction="cofinite_star")) == "measure*"


@pytest.mark.parametrize(
    "construction, params",
    [
        ("dirac", {"x0": Fraction(1, 2)}),
        ("dirac_sum", {"H": (-1, Fraction(1, 2), 3)}),
        ("coord", {"k": 2}),
        ("limit", {}),
        ("inferiorly_finite", {"alpha": Fraction(5, 2)}),
        ("left_limit_eval", {"t": 0}),
        ("cofinite_star", {}),
        ("step_ring_parity", {}),
    ],
)
def test_certify(construction, params, rng):
    cert = certify_catalog(CatalogSpec(construction=construction, params=params), 100, 32, rng)
    assert cert.sampling.passed
    assert cert.countable


def test_named_families():
    limit = CatalogSpec(construction="limit", params={"domain": "S2_c"})
    assert named_family("e-n", limit).union == BinarySequence(tail=1)
    with pytest.raises(UsageError):
        named_family("e-n", CatalogSpec(construction="sym_sup"))
    assert named_family("empty", CatalogSpec(construction="sym_sup")).tail.index == 0
    with pytest.raises(UsageError):
        named_family("spiral", limit)
