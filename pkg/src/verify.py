"""The acceptance suite behind `verify all`.

Checks are registered by id and sharded over worker threads. Each check
draws from its own generator seeded by (seed, crc32(id)), so verdicts do not
depend on which worker ran what.
"""

from dataclasses import dataclass
from fractions import Fraction
from queue import Empty, SimpleQueue
from threading import Event, Thread
from typing import Callable, Iterable, get_args
import zlib

import numpy as np

from b2 import parity, truth_table
from catalog import CatalogSpec, Construction, certify_catalog, counterexample_divergence
from carriers import IntervalCarrier
from config import CliConfig
from derivable import (
    BoxCarrier,
    BoxUnion,
    DerivableMeasure,
    LocallyFiniteSet,
    analytic_epsilon,
    bx_member,
    derivative_at,
    derivative_support,
    disjoint_boxes,
    locfin_count,
    mu_locfin,
    random_locfin,
    reconstruct_measure,
)
from errors import UsageError
from integration import (
    FunctionFamily,
    MeasurableFunction,
    MeasurableSpace,
    ae_equal,
    convergence_check,
    dual_left_integral,
    f_mu,
    integral,
    integral_on,
    left_integral,
    left_primitive,
)
from interval_ring import NEG_INF, POS_INF, interval, iv_op, member, normalize, sup_is_infinite
from literals import parse_box, parse_literal, print_box, print_interval, print_locfin, print_points, print_stepfn
from ls_measure import (
    LSMeasure,
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
from report import CheckResult, Report, StatusLog
from sampling import (
    random_interval_union,
    random_points,
    random_rational,
    random_rationals,
    random_raw_intervals,
    random_sparse,
    random_step_function,
)
from set_function import (
    AbstractMeasure,
    DisjointFamilyGenerator,
    MonotoneFamily,
    TabulatedSetFunction,
    TailCertificate,
    additive_properties_report,
    additivity_witness,
    certify_measure_via_monotone,
    check_countable_family,
    check_descending_continuity,
    dual_function,
    is_additive,
    is_additive_star,
    linear_functionals,
    partial_unions,
    remainders,
)
from set_ring import CharFunction, FiniteUniverse, SetRingFamily, complement_family, generate_ring, is_set_ring
from step_function import SparsePointFunction, sf_eval, sf_left_limit


@dataclass(frozen=True)
class CheckOutcome:
    passed: bool
    witness: str = ""


PASS = CheckOutcome(True)


def fail(witness: str) -> CheckOutcome:
    return CheckOutcome(False, witness)


CheckFn = Callable[[CliConfig, np.random.Generator], CheckOutcome]

CHECKS: dict[str, CheckFn] = {}


def check(check_id: str) -> Callable[[CheckFn], CheckFn]:
    def register(fn: CheckFn) -> CheckFn:
        CHECKS[check_id] = fn
        return fn

    return register


def check_rng(seed: int, check_id: str) -> np.random.Generator:
    return np.random.default_rng([seed, zlib.crc32(check_id.encode())])


def _cube() -> SetRingFamily:
    return SetRingFamily.power_set(FiniteUniverse.of(("a", "b", "c")))


def _tables(ring: SetRingFamily) -> list[TabulatedSetFunction]:
    """The additive functions on the power set of a 3-point universe."""
    return [TabulatedSetFunction.of(ring, lambda m, t=table: t[m]) for table in sorted(linear_functionals(3))]


# ---------------------------------------------------------------------------
# B2 and finite rings

EXPECTED_TABLE = (
    (0, 0, (1, 0, 0, 0, 1)),
    (0, 1, (1, 1, 0, 1, 0)),
    (1, 0, (0, 1, 0, 1, 0)),
    (1, 1, (0, 1, 1, 0, 1)),
)


@check("ac01-truth-table")
def truth_table_check(config: CliConfig, rng: np.random.Generator) -> CheckOutcome:
    rows = tuple(truth_table())
    if len(rows) != len(EXPECTED_TABLE):
        return fail(f"rows={len(rows)}")
    for row, expected in zip(rows, EXPECTED_TABLE):
        if tuple(row) != expected:
            return fail(f"row={row} expected={expected}")
    return PASS


@check("ac02-additive-exhaustive")
def additive_exhaustive(config: CliConfig, rng: np.random.Generator) -> CheckOutcome:
    ring = _cube()
    additive = set()
    for code in range(1 << len(ring.members)):
        mu = TabulatedSetFunction.of(ring, lambda m: (code >> m) & 1)
        disjoint_ok = additivity_witness(mu) is None
        if disjoint_ok != bool(is_additive(mu)):
            return fail(f"code={code} disjoint-union and symmetric-difference verdicts disagree")
        if disjoint_ok:
            additive.add(tuple(mu(m) for m in ring.members))
    oracle = linear_functionals(3)
    if len(additive) != 8:
        return fail(f"additive_count={len(additive)}")
    if additive != oracle:
        return fail(f"first_mismatch={sorted(additive ^ oracle)[0]}")
    return PASS


@check("ac03-additive-properties")
def additive_properties(config: CliConfig, rng: np.random.Generator) -> CheckOutcome:
    for mu in _tables(_cube()):
        table = tuple(mu(m) for m in mu.ring.members)
        for fn in (mu, dual_function(mu)):
            if fn is not mu and not is_additive_star(fn):
                return fail(f"table={table} dual is not additive*")
            report = additive_properties_report(fn)
            for item in report.items:
                if not item.passed:
                    return fail(f"table={table} item={item.item} witness={item.witness}")
    return PASS


@check("ring-duality-exhaustive")
def ring_duality(config: CliConfig, rng: np.random.Generator) -> CheckOutcome:
    ring = _cube()
    universe, full = ring.universe, ring.universe.full
    for code in range(1, 1 << len(ring.members)):
        members = [m for m in ring.members if (code >> m) & 1]
        is_ring = is_set_ring(universe, members, "delta_cap")
        dual = is_set_ring(universe, [full & ~m for m in members], "theta_cup")
        if is_ring != dual:
            return fail(f"family={members} delta_cap={is_ring} complemented theta_cup={dual}")
        if is_ring:
            family = SetRingFamily.of(universe, members, "delta_cap")
            if generate_ring(universe, members, "delta_cap") != family:
                return fail(f"family={members} is not its own generated ring")
            if complement_family(complement_family(family)) != family:
                return fail(f"family={members} complement transport is not an involution")
    return PASS


# ---------------------------------------------------------------------------
# countable additivity counterexamples


def _divergence(case: str, config: CliConfig) -> CheckOutcome:
    for depth in (config.verification.depth, 1):
        r = counterexample_divergence(case, depth)
        if (r.union_value, r.xor_sum, r.countably_additive) != (1, 0, 0):
            return fail(
                f"depth={depth} union_value={r.union_value} xor_sum={r.xor_sum} "
                f"countably_additive={r.countably_additive}"
            )
    return PASS


@check("ac04-sequence-divergence")
def sequence_divergence(config: CliConfig, rng: np.random.Generator) -> CheckOutcome:
    return _divergence("seq_3_6", config)


@check("ac05-step-ring-divergence")
def step_ring_divergence(config: CliConfig, rng: np.random.Generator) -> CheckOutcome:
    return _divergence("interval_3_13", config)


# ---------------------------------------------------------------------------
# catalog certification

DEFAULT_PARAMS: dict[str, dict] = {
    "null": {"carrier": "Sym-"},
    "restriction": {
        "base": {"construction": "dirac_sum", "params": {"H": (Fraction(0), Fraction(1, 2), Fraction(3))}},
        "set": interval(0, 1),
    },
    "dirac": {"x0": Fraction(1, 2)},
    "dirac_sum": {"H": (Fraction(-1), Fraction(1, 2), Fraction(3))},
    "coord": {"k": 2},
    "coord_sum": {"H": (0, 3, 4)},
    "limit": {"domain": "S2_0"},
    "finite_boolean": {},
    "inferiorly_finite": {"alpha": Fraction(5, 2)},
    "superiorly_finite": {"beta": Fraction(-3, 2)},
    "left_limit_eval": {"t": Fraction(1, 2)},
    "sym_sup": {},
    "indicator_integral": {"a": Fraction(-1), "b": Fraction(4)},
    "step_ring_parity": {},
    "cofinite_star": {},
    "point_eval": {"x0": "b", "universe": ("a", "b", "c")},
}


def _catalog_check(construction: str) -> CheckFn:
    def run(config: CliConfig, rng: np.random.Generator) -> CheckOutcome:
        spec = CatalogSpec(construction=construction, params=DEFAULT_PARAMS[construction])
        v = config.verification
        cert = certify_catalog(spec, v.sample_count, v.depth, rng)
        if not cert.sampling.passed:
            return fail(f"claim={cert.claim} sampled pair {cert.sampling.witness} breaks additivity")
        for name, report in cert.families:
            if not report.passed:
                return fail(f"family={name!r} union_value={report.union_value} ones={report.ones}")
        return PASS

    return run


for _name in get_args(Construction):
    check(f"catalog-{_name.replace('_', '-')}")(_catalog_check(_name))


@check("catalog-continuity-controls")
def continuity_controls(config: CliConfig, rng: np.random.Generator) -> CheckOutcome:
    depth = config.verification.depth
    carrier = IntervalCarrier()
    dirac = AbstractMeasure("dirac(1/2)", carrier, lambda A: member(A, Fraction(1, 2)))
    breakpoints = (Fraction(1, 2),)
    suite = [telescope_family(breakpoints, 0, 1), telescope_family(breakpoints, 0, POS_INF)]
    if not certify_measure_via_monotone(dirac, "ascending", [partial_unions(carrier, f) for f in suite], depth):
        return fail("dirac(1/2) fails ascending continuity")
    if not certify_measure_via_monotone(dirac, "descending", [remainders(carrier, f) for f in suite], depth):
        return fail("dirac(1/2) fails descending continuity")

    # sym_sup is additive but not countably additive on Sym-
    sym_sup = AbstractMeasure("sym_sup", carrier, sup_is_infinite)
    units = DisjointFamilyGenerator(
        produce=lambda n: interval(n, n + 1),
        union=interval(0, POS_INF),
        tail=TailCertificate(0, "measure_zero"),
        name="unit steps",
    )
    report = check_countable_family(sym_sup, units, depth)
    if report.passed or (report.union_value, report.xor_sum) != (1, 0):
        return fail(f"sym_sup on unit steps: union_value={report.union_value} xor_sum={report.xor_sum}")
    rays = MonotoneFamily(lambda n: interval(n, POS_INF), interval(0, 0), 0, "rays")
    if check_descending_continuity(sym_sup, rays, depth).converges:
        return fail("sym_sup converges on [[n, inf)) decreasing to the empty set")
    return PASS


# ---------------------------------------------------------------------------
# intervals and the Lebesgue-Stieltjes construction


@check("interval-pointwise-laws")
def interval_laws(config: CliConfig, rng: np.random.Generator) -> CheckOutcome:
    laws = {"delta": lambda a, b: a ^ b, "cap": lambda a, b: a & b, "cup": lambda a, b: a | b, "minus": lambda a, b: a & (1 ^ b)}
    for _ in range(config.verification.property_cases):
        A, B = random_interval_union(rng), random_interval_union(rng)
        points = random_rationals(rng, 4, -12, 12) + [p for p in A.endpoints() + B.endpoints() if p not in (NEG_INF, POS_INF)]
        for op, law in laws.items():
            C = iv_op(op, A, B)
            if normalize(C.components) != C:
                return fail(f"{op}({print_interval(A)}, {print_interval(B)}) is not canonical")
            for x in points:
                if member(C, x) != law(member(A, x), member(B, x)):
                    return fail(f"x={x} op={op} A={print_interval(A)} B={print_interval(B)}")
    return PASS


@check("ac06-ls-well-defined")
def ls_well_defined(config: CliConfig, rng: np.random.Generator) -> CheckOutcome:
    for _ in range(config.verification.property_cases):
        f = random_step_function(rng)
        raw = random_raw_intervals(rng)
        A = normalize(raw)
        m = LSMeasure(f)
        value = ls_eval(m, A)
        for _ in range(3):
            refined = refine(A.components, random_rationals(rng, int(rng.integers(1, 6))))
            if endpoint_xor(f, refined) != value:
                return fail(f"f={print_stepfn(f)} A={print_interval(A)} refinement={refined}")
        if ls_eval(m, delta_of(raw)) != endpoint_xor(f, raw):
            return fail(f"f={print_stepfn(f)} symmetric difference of {raw}")
    return PASS


def _random_telescope(rng: np.random.Generator, breakpoints) -> DisjointFamilyGenerator:
    kind = int(rng.integers(0, 4))
    a = random_rational(rng)
    if kind == 0:
        ratio = (Fraction(1, 2), Fraction(1, 3), Fraction(2, 3))[int(rng.integers(0, 3))]
        return telescope_family(breakpoints, a, a + random_rational(rng, 0, 8) + Fraction(1, 8), ratio)
    if kind == 1:
        return telescope_family(breakpoints, a, POS_INF)
    if kind == 2:
        return descending_telescope_family(breakpoints, a)
    return chain_family(breakpoints, random_interval_union(rng))


@check("ac07-ls-countable")
def ls_countable(config: CliConfig, rng: np.random.Generator) -> CheckOutcome:
    v = config.verification
    for _ in range(v.ls_functions):
        m = LSMeasure(random_step_function(rng))
        for _ in range(v.ls_families):
            family = _random_telescope(rng, m.f.toggles)
            report = ls_structured_countable_check(m, family, v.depth)
            if not report.passed:
                return fail(f"f={print_stepfn(m.f)} family={family.name!r} ones={report.ones}")
    return PASS


@check("ac08-ls-cdf-round-trip")
def ls_cdf_round_trip(config: CliConfig, rng: np.random.Generator) -> CheckOutcome:
    v = config.verification
    for _ in range(v.ls_functions):
        f = random_step_function(rng)
        m = LSMeasure(f)
        a = NEG_INF if rng.random() < 0.2 else random_rational(rng)
        g = ls_cdf(m, a)
        lo = -11 if a == NEG_INF else a
        for _ in range(v.ls_families):
            c = lo + random_rational(rng, 0, 12)
            d = POS_INF if rng.random() < 0.1 else c + random_rational(rng, 0, 8) + Fraction(1, 8)
            if sf_eval(g, c) ^ sf_eval(g, d) != ls_eval(m, interval(c, d)):
                return fail(f"f={print_stepfn(f)} origin={a} window=[{c},{d})")
    return PASS


# ---------------------------------------------------------------------------
# derivable measures


@check("ac09-derivative-support")
def derivative_support_check(config: CliConfig, rng: np.random.Generator) -> CheckOutcome:
    suite = [random_locfin(rng, int(rng.integers(1, 4))) for _ in range(20)]
    suite += [random_locfin(rng, int(rng.integers(1, 3)), lattice=True) for _ in range(5)]
    per_set = max(1, config.verification.property_cases // len(suite))
    for H in suite:
        mu = mu_locfin(H)
        carrier = BoxCarrier(H.dimension)
        for _ in range(per_set):
            A = carrier.sample(rng)
            support = derivative_support(mu, A)
            stray = [x for x in support if not (bx_member(A, x) and x in H)]
            if stray:
                return fail(f"H={print_locfin(H)} A={print_box(A)} stray={stray[0]}")
            if len(support) != locfin_count(H, A) or parity(len(support)) != mu(A):
                return fail(f"H={print_locfin(H)} A={print_box(A)} support={len(support)}")
        for _ in range(4):
            A, B = carrier.sample(rng), carrier.sample(rng)
            pieces = [BoxUnion(H.dimension, (box,)) for box in disjoint_boxes(A).boxes]
            if parity(sum(mu(P) for P in pieces)) != mu(A):
                return fail(f"H={print_locfin(H)} A={print_box(A)} box partition")
            if mu(carrier.cap(A, B)) ^ mu(carrier.minus(A, B)) != mu(A):
                return fail(f"H={print_locfin(H)} A={print_box(A)} B={print_box(B)} split")
    return PASS


@check("ac10-derivative-round-trip")
def derivative_round_trip(config: CliConfig, rng: np.random.Generator) -> CheckOutcome:
    suite = [random_locfin(rng, int(rng.integers(1, 4))) for _ in range(20)]
    suite += [random_locfin(rng, int(rng.integers(1, 3)), lattice=True) for _ in range(5)]
    per_set = max(1, config.verification.property_cases // len(suite))
    probes = config.probe.samples
    for H in suite:
        mu = mu_locfin(H)
        blind = DerivableMeasure("probed", H.dimension, mu.fn)
        window = BoxUnion.of([[(-3, 3)] * H.dimension])
        support = derivative_support(mu, window)
        for x in support[:12]:
            if derivative_at(mu, x) != 1:
                return fail(f"H={print_locfin(H)} x={x} declared derivative")
            if derivative_at(blind, x, analytic_epsilon(mu, x), probes, rng) != 1:
                return fail(f"H={print_locfin(H)} x={x} probed derivative")
        for _ in range(100):
            x = tuple(random_rational(rng, -6, 6) for _ in range(H.dimension))
            expected = int(x in H)
            if derivative_at(mu, x) != expected:
                return fail(f"H={print_locfin(H)} x={x} outside point")
            if derivative_at(blind, x, analytic_epsilon(mu, x), max(1, probes // 10), rng) != expected:
                return fail(f"H={print_locfin(H)} x={x} probed outside point")
        # the support inside the window determines mu on every box in the window
        rebuilt = reconstruct_measure(LocallyFiniteSet.finite(support, H.dimension))
        carrier = BoxCarrier(H.dimension)
        for _ in range(per_set):
            A = carrier.cap(carrier.sample(rng), window)
            if rebuilt(A) != mu(A):
                return fail(f"H={print_locfin(H)} A={print_box(A)} reconstruction")
    return PASS


# ---------------------------------------------------------------------------
# integration


@check("ac11-primitive-keystone")
def primitive_keystone(config: CliConfig, rng: np.random.Generator) -> CheckOutcome:
    for _ in range(config.verification.property_cases):
        f = random_sparse(rng)
        a = NEG_INF if rng.random() < 0.1 else random_rational(rng)
        F = left_primitive(f, a)
        for s in F.toggles:
            if sf_eval(F, s) != sf_left_limit(F, s):
                return fail(f"f={print_points(f)} origin={a} primitive jumps at {s}")
        lo = -11 if a == NEG_INF else a
        c = lo + random_rational(rng, 0, 12)
        d = POS_INF if rng.random() < 0.1 else c + random_rational(rng, 0, 8) + Fraction(1, 8)
        if ls_eval(LSMeasure(F), interval(c, d)) != left_integral(f, c, d):
            return fail(f"f={print_points(f)} origin={a} window=[{c},{d})")
        zeros = random_sparse(rng)
        expected = 1 ^ parity(sum(1 for z in zeros.support if c <= z < d))
        if dual_left_integral(zeros, c, d) != expected:
            return fail(f"zeros={print_points(zeros)} window=[{c},{d}) dual integral")
    return PASS


@check("ac12-integral-exhaustive")
def integral_exhaustive(config: CliConfig, rng: np.random.Generator) -> CheckOutcome:
    ring = _cube()
    space = MeasurableSpace.finite(ring)
    u = ring.universe
    functions = [MeasurableFunction(CharFunction(u, bits), space) for bits in ring.members]
    for mu in _tables(ring):
        for F in functions:
            weighted = f_mu(F, mu)
            for A in ring.members:
                if weighted(A) != integral_on(A, F, mu):
                    return fail(f"f={F.f.bits:#x} A={A:#x} f.mu disagrees with the integral on A")
            for G in functions:
                FG = MeasurableFunction(CharFunction(u, F.f.bits ^ G.f.bits), space)
                if integral(FG, mu) != integral(F, mu) ^ integral(G, mu):
                    return fail(f"f={F.f.bits:#x} g={G.f.bits:#x} linearity")
                if ae_equal(F, G, mu) and integral(F, mu) != integral(G, mu):
                    return fail(f"f={F.f.bits:#x} g={G.f.bits:#x} a.e. equal with different integrals")

    points = MeasurableSpace.points()
    for i in range(100):
        T = frozenset(random_points(rng))
        extra = random_points(rng, 8, 20, 30)
        family = FunctionFamily(
            produce=lambda n, T=T, extra=extra: SparsePointFunction.of(T | frozenset(extra[n:])),
            tail=len(extra),
            name="shrinking supports",
        )
        target = MeasurableFunction(SparsePointFunction.of(T), points)
        mode = ("decreasing", "in_measure")[i % 2]
        report = convergence_check(family, mode, target, lambda A: parity(len(A)), config.verification.depth)
        if not report.converges:
            return fail(f"mode={mode} target={sorted(T)} extra={extra}")
    return PASS


# ---------------------------------------------------------------------------
# literals


@check("literals-round-trip")
def literals_round_trip(config: CliConfig, rng: np.random.Generator) -> CheckOutcome:
    for _ in range(config.verification.property_cases):
        A = random_interval_union(rng)
        if parse_literal("interval", print_interval(A)) != A:
            return fail(f"interval {print_interval(A)}")
        f = random_step_function(rng)
        if parse_literal("stepfn", print_stepfn(f)) != f:
            return fail(f"stepfn {print_stepfn(f)}")
        g = random_sparse(rng, dimension=int(rng.integers(1, 3)))
        if parse_literal("points", print_points(g)) != g:
            return fail(f"points {print_points(g)}")
        dimension = int(rng.integers(1, 4))
        B = BoxCarrier(dimension).sample(rng)
        if parse_box(print_box(B), dimension) != B:
            return fail(f"box {print_box(B)}")
        H = random_locfin(rng, dimension, lattice=bool(rng.integers(0, 2)))
        if H.kind == "lattice" and parse_literal("lattice", print_locfin(H)) != H:
            return fail(f"lattice {print_locfin(H)}")
    return PASS


# ---------------------------------------------------------------------------
# determinism


@check("ac13-determinism")
def determinism(config: CliConfig, rng: np.random.Generator) -> CheckOutcome:
    v = config.verification
    small = v.model_copy(update={"property_cases": min(v.property_cases, 50)})
    for check_id in ("ac06-ls-well-defined", "ac11-primitive-keystone", "ac09-derivative-support"):
        fn = CHECKS[check_id]
        runs = [fn(config.model_copy(update={"verification": small}), check_rng(v.seed, check_id)) for _ in range(2)]
        if runs[0] != runs[1]:
            return fail(f"{check_id} differs between runs: {runs[0]} {runs[1]}")
        for seed in range(5):
            seeded = config.model_copy(update={"verification": small.model_copy(update={"seed": seed})})
            outcome = fn(seeded, check_rng(seed, check_id))
            if outcome != runs[0]:
                return fail(f"{check_id} verdict changes under seed {seed}: {outcome.witness}")
    return PASS


# ---------------------------------------------------------------------------
# runner


class CheckWorker:
    """Runs check ids from the input queue and posts their results."""

    def __init__(
        self,
        input_queue: SimpleQueue[str],
        output_queue: SimpleQueue[CheckResult],
        exit_event: Event,
        config: CliConfig,
        report: Report,
    ) -> None:
        self.input_queue = input_queue
        self.output_queue = output_queue
        self.exit_event = exit_event
        self.config = config
        self.report = report

    def run(self, check_id: str) -> CheckResult:
        rng = check_rng(self.config.verification.seed, check_id)
        try:
            outcome = CHECKS[check_id](self.config, rng)
        except Exception as e:
            outcome = fail(f"{type(e).__name__}: {e}")
        return self.report.record(check_id, outcome.passed, outcome.witness)

    def loop(self) -> None:
        while not self.exit_event.is_set():
            try:
                check_id = self.input_queue.get(True, 0.25)
            except Empty:
                continue
            self.output_queue.put(self.run(check_id))


def verify_all(
    config: CliConfig,
    only: Iterable[str] | None = None,
    log: Callable[[str], None] | None = None,
) -> Report:
    """Run the acceptance suite (or the checks in `only`) and collect a Report."""
    log = log or StatusLog()
    check_ids = sorted(CHECKS) if only is None else sorted(set(only))
    unknown = [c for c in check_ids if c not in CHECKS]
    if unknown:
        raise UsageError(f"unknown checks {unknown}")

    report = Report()
    input_queue: SimpleQueue[str] = SimpleQueue()
    output_queue: SimpleQueue[CheckResult] = SimpleQueue()
    exit_event = Event()
    for check_id in check_ids:
        input_queue.put(check_id)

    workers = [
        CheckWorker(input_queue, output_queue, exit_event, config, report)
        for _ in range(max(1, min(config.verification.workers, len(check_ids))))
    ]
    threads = [Thread(target=worker.loop, daemon=True) for worker in workers]
    log(f"running {len(check_ids)} checks on {len(threads)} workers, seed {config.verification.seed}")
    for thread in threads:
        thread.start()

    done = 0
    try:
        while done < len(check_ids):
            try:
                result = output_queue.get(True, 0.25)
            except Empty:
                continue
            done += 1
            log(f"{result.check_id} {'PASS' if result.passed else 'FAIL'}")
    finally:
        exit_event.set()
        for thread in threads:
            thread.join()

    log(report.summary())
    return report
