#!/usr/bin/env python3

import argparse
import os
import sys
from typing import Any, Callable

from b2 import LAWS, truth_table
from catalog import (
    COUNTEREXAMPLES,
    NAMED_FAMILIES,
    CatalogSpec,
    as_spec,
    catalog_build,
    catalog_list,
    certify_catalog,
    counterexample_divergence,
    named_family,
)
from carriers import FinitePointCarrier, IntervalCarrier
from config import CliConfig, load_config, with_overrides
from derivable import as_vector, derivative_at, integral_derivable, integral_on_derivable, mu_locfin
from errors import BinMeasureError, UsageError
from integration import (
    IndicatorFunction,
    MeasurableFunction,
    MeasurableSpace,
    dual_left_integral,
    integral,
    integral_on,
    left_integral,
    left_primitive,
)
from interval_ring import iv_op
from literals import (
    parse_box,
    parse_for_carrier,
    parse_literal,
    parse_point,
    parse_rational,
    print_catalog,
    print_interval,
    print_stepfn,
)
from ls_measure import LSMeasure, ls_cdf, ls_eval
from report import StatusLog
from set_function import (
    TabulatedSetFunction,
    additive_properties_report,
    additivity_witness,
    check_countable_family,
    is_additive,
    is_additive_star,
    tabulate,
)
from set_ring import CharFunction, FiniteUniverse, SetRingFamily, is_set_algebra, is_set_ring
from step_function import SparsePointFunction, sf_eval
from verify import CHECKS, check_rng, verify_all

CONFIG_PATH = "./priv/config.json"

LAW_PAIRS = {"delta-cap": "delta_cap", "theta-cup": "theta_cup"}


class Output:
    """Writes results in text or machine format."""

    def __init__(self, fmt: str):
        self.fmt = fmt

    def value(self, label: str, value: Any) -> None:
        print(value if self.fmt == "machine" else f"{label} = {value}")

    def line(self, text: str) -> None:
        print(text)


def _read(path: str) -> str:
    try:
        with open(path, "r") as f:
            return f.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}")


def _universe_cap(universe: FiniteUniverse, config: CliConfig) -> None:
    if len(universe) > config.limits.universe_cap:
        raise UsageError(f"universe of {len(universe)} elements is above the cap {config.limits.universe_cap}")


def resolve_spec(spec: CatalogSpec) -> CatalogSpec:
    """Parse a restriction's quoted set literal against its base carrier."""
    if spec.construction != "restriction":
        return spec
    params = dict(spec.params)
    if "base" not in params:
        return spec
    base = resolve_spec(as_spec(params["base"]))
    params["base"] = base
    if isinstance(params.get("set"), str):
        params["set"] = parse_for_carrier(catalog_build(base).carrier, params["set"])
    return CatalogSpec(construction="restriction", params=params)


def _spec(text: str) -> CatalogSpec:
    return resolve_spec(parse_literal("catalog", text))


def _function(text: str):
    """A stepfn, interval, box or points literal as a function."""
    stripped = text.lstrip()
    if stripped.startswith("init"):
        return parse_literal("stepfn", text)
    if stripped.startswith("[") and "x" in stripped:
        return IndicatorFunction(parse_box(text))
    if stripped.startswith("[") or stripped == "{}":
        return IndicatorFunction(parse_literal("interval", text))
    return parse_literal("points", text)


# ---------------------------------------------------------------------------
# subcommands


def cmd_b2_table(args, config: CliConfig, out: Output) -> int:
    out.line(" ".join(("a", "b", *LAWS)))
    for a, b, values in truth_table():
        out.line(" ".join(str(v) for v in (a, b, *values)))
    return 0


def cmd_ring_check(args, config: CliConfig, out: Output) -> int:
    universe, members = parse_literal("family", _read(args.file))
    _universe_cap(universe, config)
    law_pair = LAW_PAIRS[args.laws]
    ring = is_set_ring(universe, members, law_pair)
    out.value("ring", ring)
    if ring:
        out.value("algebra", is_set_algebra(universe, members, law_pair))
    return 0 if ring else 1


def cmd_setfn_check_additive(args, config: CliConfig, out: Output) -> int:
    universe, values = parse_literal("tabfn", _read(args.file))
    _universe_cap(universe, config)
    ring = SetRingFamily.of(universe, values, LAW_PAIRS[args.laws])
    mu = TabulatedSetFunction(ring, values)
    if ring.law_pair == "delta_cap":
        verdict = is_additive(mu)
        out.value("additive", verdict)
        if not verdict:
            a, b = additivity_witness(mu)
            out.line(f"witness: {{{' '.join(universe.labels_of(a))}}} {{{' '.join(universe.labels_of(b))}}}")
    else:
        verdict = is_additive_star(mu)
        out.value("additive*", verdict)
    if verdict:
        for item in additive_properties_report(mu).items:
            out.value(f"item {item.item}", int(item.passed))
    return 0 if verdict else 1


def cmd_setfn_check_countable(args, config: CliConfig, out: Output) -> int:
    spec = _spec(args.measure)
    mu = catalog_build(spec)
    family = named_family(args.family, spec)
    depth = max(config.verification.depth, family.tail.index)
    report = check_countable_family(mu, family, depth)
    out.value("finitely_many_ones", report.finitely_many_ones)
    out.value("xor_equality", report.xor_equality)
    out.value("union_value", report.union_value)
    out.value("xor_sum", report.xor_sum)
    return 0 if report.passed else 1


def cmd_catalog_list(args, config: CliConfig, out: Output) -> int:
    for entry in catalog_list():
        out.line(f"{entry.construction:<20} {entry.carrier:<16} {entry.claim:<34} {entry.params:<22} {entry.summary}")
    return 0


def cmd_catalog_run(args, config: CliConfig, out: Output) -> int:
    report = counterexample_divergence(args.case, config.verification.depth)
    out.value("union_value", report.union_value)
    out.value("xor_sum", report.xor_sum)
    out.value("countably_additive", report.countably_additive)
    return 0


def cmd_catalog_eval(args, config: CliConfig, out: Output) -> int:
    spec = _spec(args.spec)
    mu = catalog_build(spec)
    A = parse_for_carrier(mu.carrier, args.arg)
    out.value(f"{print_catalog(spec)}({args.arg})", mu(A))
    return 0


def cmd_catalog_certify(args, config: CliConfig, out: Output) -> int:
    spec = _spec(args.spec)
    v = config.verification
    cert = certify_catalog(spec, v.sample_count, v.depth, check_rng(v.seed, print_catalog(spec)))
    out.value("claim", cert.claim)
    out.value("sampled", int(cert.sampling.passed))
    for name, report in cert.families:
        out.value(f"family {name}", int(report.passed))
    return 0 if cert.sampling.passed and cert.countable else 1


def cmd_interval_op(args, config: CliConfig, out: Output) -> int:
    A = parse_literal("interval", args.a)
    B = parse_literal("interval", args.b)
    out.value(args.op, print_interval(iv_op(args.op, A, B)))
    return 0


def cmd_stepfn_eval(args, config: CliConfig, out: Output) -> int:
    f = parse_literal("stepfn", args.f)
    out.value(f"f({args.t})", sf_eval(f, parse_rational(args.t)))
    return 0


def cmd_ls_eval(args, config: CliConfig, out: Output) -> int:
    m = LSMeasure(parse_literal("stepfn", args.f))
    out.value("mu", ls_eval(m, parse_literal("interval", getattr(args, "set"))))
    return 0


def cmd_ls_cdf(args, config: CliConfig, out: Output) -> int:
    g = ls_cdf(LSMeasure(parse_literal("stepfn", args.f)), parse_rational(args.origin))
    if args.emit:
        out.line(print_stepfn(g))
    else:
        out.value("g", print_stepfn(g))
    return 0


def cmd_parity(args, config: CliConfig, out: Output) -> int:
    H = parse_literal("locfin", args.H)
    A = parse_box(getattr(args, "set"), H.dimension, config.limits.dimension_cap)
    out.value("mu_H", mu_locfin(H)(A))
    return 0


def cmd_deriv(args, config: CliConfig, out: Output) -> int:
    H = parse_literal("locfin", args.H)
    x = as_vector(parse_point(args.x))
    out.value(f"d mu_H{args.x}", derivative_at(mu_locfin(H), x))
    return 0


def cmd_riemann(args, config: CliConfig, out: Output) -> int:
    f = _function(args.f)
    out.value("integral", left_integral(f, parse_rational(args.start), parse_rational(args.stop)))
    return 0


def cmd_primitive(args, config: CliConfig, out: Output) -> int:
    F = left_primitive(parse_literal("points", args.f), parse_rational(args.origin))
    if args.emit:
        out.line(print_stepfn(F))
    else:
        out.value("F", print_stepfn(F))
    return 0


def cmd_dual_riemann(args, config: CliConfig, out: Output) -> int:
    zeros = parse_literal("points", args.zeros)
    out.value("dual integral", dual_left_integral(zeros, parse_rational(args.start), parse_rational(args.stop)))
    return 0


def _integrate_box(args, config: CliConfig) -> int:
    mu = mu_locfin(parse_literal("locfin", args.measure))
    dimension = mu.dimension
    if args.f.lstrip().startswith("["):
        f = MeasurableFunction(IndicatorFunction(parse_box(args.f, dimension, config.limits.dimension_cap)), MeasurableSpace.box(dimension))
        if args.on is None:
            return integral(f, mu)
        return integral_on(parse_box(args.on, dimension, config.limits.dimension_cap), f, mu)
    g = parse_literal("points", args.f)
    if args.on is None:
        return integral_derivable(g, mu)
    return integral_on_derivable(parse_box(args.on, dimension, config.limits.dimension_cap), g, mu)


def cmd_integrate(args, config: CliConfig, out: Output) -> int:
    if args.space == "box":
        out.value("integral", _integrate_box(args, config))
        return 0
    spec = _spec(args.measure)
    measure = catalog_build(spec)
    carrier = measure.carrier
    if args.space == "finite":
        if not isinstance(carrier, FinitePointCarrier) or carrier.universe is None:
            raise UsageError("the finite space needs a measure on a finite carrier with a universe")
        universe = FiniteUniverse.of(carrier.pool, config.limits.universe_cap)
        ring = SetRingFamily.power_set(universe)
        space = MeasurableSpace.finite(ring)
        mu = tabulate(measure, ring)
        f = MeasurableFunction(CharFunction(universe, universe.mask_of(parse_literal("labels", args.f))), space)
        on = None if args.on is None else universe.mask_of(parse_literal("labels", args.on))
    elif args.space == "points":
        if not isinstance(carrier, FinitePointCarrier):
            raise UsageError("the points space needs a measure on finite sets")
        space = MeasurableSpace.points()
        mu = measure
        if args.f.lstrip().startswith("{") and args.f.strip() != "{}":
            f = MeasurableFunction(SparsePointFunction.of(parse_literal("labels", args.f)), space)
        else:
            f = MeasurableFunction(_function(args.f), space)
        on = None if args.on is None else parse_for_carrier(carrier, args.on)
    elif args.space == "interval":
        if not isinstance(carrier, IntervalCarrier):
            raise UsageError("the interval space needs a measure on interval unions")
        space = MeasurableSpace.interval()
        mu = measure
        on = None if args.on is None else parse_literal("interval", args.on)
        raw = _function(args.f)
        if on is not None:
            out.value("integral", integral_on(on, raw, mu, space))
            return 0
        f = MeasurableFunction(raw, space)
    else:
        raise UsageError(f"unknown space {args.space!r}")
    out.value("integral", integral(f, mu) if on is None else integral_on(on, f, mu))
    return 0


def cmd_verify_all(args, config: CliConfig, out: Output) -> int:
    report = verify_all(config, args.check or None, StatusLog(enabled=not args.quiet))
    for line in report.machine_lines():
        out.line(line)
    if out.fmt == "text":
        out.line(report.summary())
    return report.exit_code


# ---------------------------------------------------------------------------
# argument parsing


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, help="seed of every random draw")
    common.add_argument("--depth", type=int, help="depth of countable family checks")
    common.add_argument("--samples", type=int, help="random pairs drawn when sampling additivity")
    common.add_argument("--format", choices=("text", "machine"), default="text")
    common.add_argument("--config", help=f"JSON configuration file (default {CONFIG_PATH} when present)")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="binmeasure", description="Binary measure theory toolkit")
    commands = parser.add_subparsers(dest="command", required=True)

    def leaf(group, name: str, handler: Callable, help: str) -> argparse.ArgumentParser:
        p = group.add_parser(name, parents=[common], help=help)
        p.set_defaults(handler=handler)
        return p

    def group(name: str, help: str):
        return commands.add_parser(name, help=help).add_subparsers(dest="action", required=True)

    b2 = group("b2", "binary Boole algebra")
    leaf(b2, "table", cmd_b2_table, "print the truth table of the five laws")

    ring = group("ring", "finite set rings")
    p = leaf(ring, "check", cmd_ring_check, "check a family file for ring closure")
    p.add_argument("--file", required=True)
    p.add_argument("--laws", choices=tuple(LAW_PAIRS), default="delta-cap")

    setfn = group("setfn", "binary set functions")
    p = leaf(setfn, "check-additive", cmd_setfn_check_additive, "check a tabulated set function")
    p.add_argument("--file", required=True)
    p.add_argument("--laws", choices=tuple(LAW_PAIRS), default="delta-cap")
    p = leaf(setfn, "check-countable", cmd_setfn_check_countable, "run a named disjoint family")
    p.add_argument("--measure", required=True, help="catalog literal, e.g. 'limit(domain=S2_c)'")
    p.add_argument("--family", required=True, choices=NAMED_FAMILIES)

    catalog = group("catalog", "example measures")
    leaf(catalog, "list", cmd_catalog_list, "list the registered constructions")
    p = leaf(catalog, "run", cmd_catalog_run, "reproduce a countable additivity counterexample")
    p.add_argument("--case", required=True, choices=tuple(c.replace("_", "-") for c in COUNTEREXAMPLES))
    p = leaf(catalog, "eval", cmd_catalog_eval, "evaluate a construction on one set")
    p.add_argument("--spec", required=True)
    p.add_argument("--arg", required=True)
    p = leaf(catalog, "certify", cmd_catalog_certify, "sample and run the family suite of a construction")
    p.add_argument("--spec", required=True)

    interval_cmd = group("interval", "finite unions of half-open intervals")
    p = leaf(interval_cmd, "op", cmd_interval_op, "combine two interval unions")
    p.add_argument("--op", required=True, choices=("delta", "cap", "cup", "minus"))
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)

    stepfn = group("stepfn", "binary step functions")
    p = leaf(stepfn, "eval", cmd_stepfn_eval, "evaluate a step function")
    p.add_argument("--f", required=True)
    p.add_argument("--t", required=True)

    ls = group("ls", "Lebesgue-Stieltjes binary measures")
    p = leaf(ls, "eval", cmd_ls_eval, "evaluate mu_f on an interval union")
    p.add_argument("--f", required=True)
    p.add_argument("--set", required=True)
    p = leaf(ls, "cdf", cmd_ls_cdf, "the step function t -> mu_f([[origin, t)))")
    p.add_argument("--f", required=True)
    p.add_argument("--origin", required=True)
    p.add_argument("--emit", action="store_true", help="print only the step function literal")

    p = leaf(commands, "parity", cmd_parity, "parity measure of a locally finite set on a box union")
    p.add_argument("--H", required=True)
    p.add_argument("--set", required=True)
    p = leaf(commands, "deriv", cmd_deriv, "derivative of a parity measure at a point")
    p.add_argument("--H", required=True)
    p.add_argument("--x", required=True)

    p = leaf(commands, "riemann", cmd_riemann, "Riemann integral over [[from, to)))")
    p.add_argument("--f", required=True)
    p.add_argument("--from", dest="start", required=True)
    p.add_argument("--to", dest="stop", required=True)
    p = leaf(commands, "primitive", cmd_primitive, "left primitive of a finitely supported function")
    p.add_argument("--f", required=True)
    p.add_argument("--origin", required=True)
    p.add_argument("--emit", action="store_true", help="print only the step function literal")
    p = leaf(commands, "dual-riemann", cmd_dual_riemann, "dual integral of the function vanishing on --zeros")
    p.add_argument("--zeros", required=True)
    p.add_argument("--from", dest="start", required=True)
    p.add_argument("--to", dest="stop", required=True)

    p = leaf(commands, "integrate", cmd_integrate, "integral of a function against a measure")
    p.add_argument("--space", required=True, choices=("finite", "points", "interval", "box"))
    p.add_argument("--measure", required=True, help="catalog literal, or a locfin literal for --space box")
    p.add_argument("--f", required=True)
    p.add_argument("--on")

    verify = group("verify", "the acceptance suite")
    p = leaf(verify, "all", cmd_verify_all, "run every check")
    p.add_argument("--check", action="append", choices=sorted(CHECKS), help="run only this check (repeatable)")
    p.add_argument("--quiet", action="store_true", help="no status lines on stderr")
    return parser


def load(args) -> CliConfig:
    path = args.config or (CONFIG_PATH if os.path.exists(CONFIG_PATH) else None)
    config = load_config(path) if path else CliConfig()
    return with_overrides(config, seed=args.seed, depth=args.depth, samples=args.samples)


def main(argv: list[str] | None = None) -> int:
    """Command-line front end; returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2

    try:
        config = load(args)
    except ValueError as e:
        print(f"Error loading configuration: {e}", file=sys.stderr)
        return 2

    try:
        return args.handler(args, config, Output(args.format))
    except BinMeasureError as e:
        print(f"binmeasure: {type(e).__name__}: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
