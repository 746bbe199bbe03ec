"""Command-line front end.

Exit codes: 0 success, 1 domain errors (printed as
``error: <CODE>: <detail>`` on stderr), 2 usage errors.  Every randomized
subcommand takes an explicit ``--seed`` (there is no wall-clock seeding),
so identical invocations reproduce identical bytes; ``--jobs`` only
changes scheduling, never output.

Rationals on the command line are ``p/q`` strings parsed exactly; decimals
are rejected to avoid silent rounding.  ``--in -`` reads the graph from
standard input.
"""

from __future__ import annotations

import argparse
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import extremal, lab, metrics, oracle, probability
from .errors import DomainError
from .graph import (
    MixedGraph,
    MixedRatio,
    check_mixed_ratio,
    degrees,
    min_mixed_ratio,
    parse_mg,
    serialize_mg,
)

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def rational(text: str) -> Fraction:
    if not _RATIONAL_RE.match(text):
        raise argparse.ArgumentTypeError(
            f"expected an exact rational like 2/5, got {text!r}"
        )
    return Fraction(text)


def int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _read_graph(path: str) -> MixedGraph:
    if path == "-":
        return parse_mg(sys.stdin.buffer.read())
    return parse_mg(Path(path).read_bytes())


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_bytes(text.encode("utf-8"))


def _fmt_float(x: float) -> str:
    return format(x, ".12g")


def _fmt_fraction(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orient2",
        description="Diameter-two orientation toolkit for mixed graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="build an extremal instance")
    gen.add_argument("--c1", type=rational, required=True)
    gen.add_argument("--c2", type=rational, required=True)
    gen.add_argument("--m", type=int, required=True)
    gen.add_argument("--out", required=True, help=".mg path; a .classes sidecar is written next to it")

    check = sub.add_parser("check", help="validate a graph and report degrees and bridges")
    check.add_argument("--in", dest="infile", required=True)
    check.add_argument("--mixed-reachability", action="store_true",
                       help="bridge test uses mixed reachability instead of weak connectivity")

    ratio = sub.add_parser("ratio", help="componentwise-minimal mixed ratio")
    ratio.add_argument("--in", dest="infile", required=True)
    ratio.add_argument("--check-c1", type=rational)
    ratio.add_argument("--check-c2", type=rational)

    orient = sub.add_parser("orient", help="Las Vegas search for a diameter-2 orientation")
    orient.add_argument("--in", dest="infile", required=True)
    orient.add_argument("--tries", type=int, default=64)
    orient.add_argument("--seed", type=int, required=True)
    orient.add_argument("--jobs", type=int, default=1)
    orient.add_argument("--out", help="orientation file (default: stdout)")

    xi = sub.add_parser("xi", help="first-moment sum, exact plus closed-form bound")
    xi.add_argument("--in", dest="infile", required=True)
    xi.add_argument("--delta", type=int, help="min degree for the closed-form bound")
    xi.add_argument("--c1", type=rational)
    xi.add_argument("--c2", type=rational)

    threshold = sub.add_parser("threshold", help="sufficient minimum degree for diameter-2 orientability")
    threshold.add_argument("--n", type=int, required=True)
    threshold.add_argument("--c1", type=rational, required=True)
    threshold.add_argument("--c2", type=rational, required=True)

    orc = sub.add_parser("oracle", help="exhaustive ground truth on small graphs")
    orc.add_argument("mode", choices=["diam", "pairfail", "failprob"])
    orc.add_argument("--in", dest="infile", required=True)
    orc.add_argument("-u", type=int, help="pair source (pairfail)")
    orc.add_argument("-v", type=int, help="pair target (pairfail)")
    orc.add_argument("--budget", type=int, default=22, help="max undirected edges to enumerate")

    certify = sub.add_parser("certify", help="witness that an orientation of an extremal instance has diameter >= 3")
    certify.add_argument("--in", dest="infile", required=True)
    certify.add_argument("--classes", help="sidecar path (default: derived from --in)")
    certify.add_argument("--c1", type=rational, required=True)
    certify.add_argument("--c2", type=rational, required=True)
    certify.add_argument("--m", type=int, required=True)
    group = certify.add_mutually_exclusive_group(required=True)
    group.add_argument("--orientation-seed", type=int)
    group.add_argument("--orientation-file")

    sweep = sub.add_parser("sweep", help="success-rate sweep over a (n, delta) grid")
    sweep.add_argument("--n", type=int_list, required=True, help="comma-separated orders")
    sweep.add_argument("--delta", type=int_list, required=True, help="comma-separated min-degree targets")
    sweep.add_argument("--c1", type=rational, required=True)
    sweep.add_argument("--c2", type=rational, required=True)
    sweep.add_argument("--p", type=float, required=True, help="edge probability")
    sweep.add_argument("--q", type=float, required=True, help="arc probability")
    sweep.add_argument("--trials", type=int, default=100)
    sweep.add_argument("--tries", type=int, default=32)
    sweep.add_argument("--seed", type=int, required=True)
    sweep.add_argument("--jobs", type=int, default=1)
    sweep.add_argument("--out", help="CSV path (default: stdout)")

    bounds = sub.add_parser("bounds", help="orientation radius/diameter enclosures")
    group = bounds.add_mutually_exclusive_group(required=True)
    group.add_argument("--radius", type=int)
    group.add_argument("--diameter", type=int)

    return parser


def _cmd_gen(args) -> int:
    params = extremal.ExtremalParams(MixedRatio(args.c1, args.c2), args.m)
    layout = extremal.build_extremal(params)
    out = Path(args.out)
    _write_text(str(out), serialize_mg(layout.graph))
    sidecar = out.with_suffix(".classes")
    sidecar.write_bytes(layout.classes_text().encode("utf-8"))
    forms = extremal.closed_forms(params)
    delta_actual, log_rhs = extremal.log_term_sides(params)
    print(f"variant={layout.sizes.variant.value}")
    print(f"n={forms.n}")
    print(f"delta={forms.delta}")
    print(f"identity_holds={str(forms.identity_holds).lower()}")
    print(f"log_term_sides={_fmt_float(delta_actual)},{_fmt_float(log_rhs)}")
    print(f"wrote={out} classes={sidecar}")
    return 0


def _cmd_check(args) -> int:
    g = _read_graph(args.infile)
    print(f"ok n={g.n} undirected={len(g.undirected)} arcs={len(g.arcs)}")
    if g.n:
        print(f"delta={g.min_degree} Delta={g.max_degree}")
    bridge = metrics.has_bridge(g, mixed_reachability=args.mixed_reachability)
    print("bridge=none" if bridge is None else f"bridge={bridge[0]},{bridge[1]}")
    return 0


def _cmd_ratio(args) -> int:
    g = _read_graph(args.infile)
    r = min_mixed_ratio(g)
    print(f"c1={_fmt_fraction(r.c1)} c2={_fmt_fraction(r.c2)}")
    if args.check_c1 is not None or args.check_c2 is not None:
        if args.check_c1 is None or args.check_c2 is None:
            raise DomainError("--check-c1 and --check-c2 go together")
        violations = check_mixed_ratio(g, MixedRatio(args.check_c1, args.check_c2))
        print(f"violations={len(violations)}")
        for v in violations:
            print(
                f"vertex={v.vertex} out={_fmt_fraction(v.out_ratio)}"
                f" in={_fmt_fraction(v.in_ratio)}"
            )
    return 0


def _cmd_orient(args) -> int:
    g = _read_graph(args.infile)
    d = probability.las_vegas_diam2(g, args.tries, args.seed, jobs=args.jobs)
    report = metrics.directed_eccentricities(d)
    _write_text(args.out, metrics.orientation_to_mg(d))
    print(f"diameter={int(report.diameter)}", file=sys.stderr)
    return 0


def _cmd_xi(args) -> int:
    g = _read_graph(args.infile)
    result = probability.xi_exact(g)
    print(f"xi={_fmt_float(result.value)}")
    if result.exact is not None:
        print(f"xi_exact={_fmt_fraction(result.exact)}")
    print(f"conclusive={str(result.conclusive).lower()}")
    if args.delta is not None:
        c1 = args.c1 if args.c1 is not None else Fraction(0)
        c2 = args.c2 if args.c2 is not None else Fraction(0)
        bound = probability.xi_upper_bound(g.n, args.delta, MixedRatio(c1, c2))
        print(f"xi_bound={_fmt_float(bound.xi_bound)}")
        if bound.xi_bound_exact is not None:
            print(f"xi_bound_exact={_fmt_fraction(bound.xi_bound_exact)}")
        print(f"bound_conclusive={str(bound.conclusive).lower()}")
    return 0


def _cmd_threshold(args) -> int:
    bound = probability.sufficient_min_degree(args.n, MixedRatio(args.c1, args.c2))
    print(f"sufficient_delta={_fmt_float(bound.sufficient_delta)}")
    print(f"ceiling={bound.sufficient_ceiling}")
    print(f"vacuous={str(bound.vacuous).lower()}")
    return 0


def _cmd_oracle(args) -> int:
    g = _read_graph(args.infile)
    budget = oracle.OracleBudget(max_undirected=args.budget)
    if args.mode == "diam":
        result = oracle.oriented_diameter_exact(g, budget)
        print("oriented_diameter=none" if result is None else f"oriented_diameter={result}")
    elif args.mode == "pairfail":
        if args.u is None or args.v is None:
            raise DomainError("pairfail needs -u and -v")
        prob = oracle.pair_failure_bruteforce(g, args.u, args.v, budget)
        print(f"pair_failure={_fmt_fraction(prob)}")
    else:
        prob = oracle.diam2_failure_probability_bruteforce(g, budget)
        print(f"failure_probability={_fmt_fraction(prob)}")
    return 0


def _cmd_certify(args) -> int:
    g = _read_graph(args.infile)
    params = extremal.ExtremalParams(MixedRatio(args.c1, args.c2), args.m)
    classes_path = (
        Path(args.classes)
        if args.classes
        else Path(args.infile).with_suffix(".classes")
    )
    class_of, ranks = extremal.parse_classes_text(
        classes_path.read_text(encoding="utf-8")
    )
    layout = extremal.layout_from_parts(params, g, class_of, ranks)
    if args.orientation_file is not None:
        d = metrics.orientation_from_mg(g, Path(args.orientation_file).read_bytes())
    else:
        d = probability.sample_orientation(g, args.orientation_seed)
    witness = extremal.certify_diameter_ge3(layout, d)
    blocked = ",".join(str(w) for w in sorted(witness.blocked_mid))
    print(f"witness={witness.source}->{witness.target}")
    print(f"side={witness.side}")
    print(f"blocked_mid={blocked}")
    return 0


def _cmd_sweep(args) -> int:
    rows = lab.threshold_sweep(
        args.n,
        MixedRatio(args.c1, args.c2),
        args.delta,
        args.trials,
        args.tries,
        args.seed,
        args.p,
        args.q,
        jobs=args.jobs,
    )
    _write_text(args.out, lab.rows_to_csv(rows))
    return 0


def _cmd_bounds(args) -> int:
    if args.radius is not None:
        lower, upper = lab.section3_bounds("radius", args.radius)
    else:
        lower, upper = lab.section3_bounds("diameter", args.diameter)
    print(f"lower={_fmt_fraction(lower)}")
    print(f"upper={_fmt_fraction(upper)}")
    return 0


_HANDLERS = {
    "gen": _cmd_gen,
    "check": _cmd_check,
    "ratio": _cmd_ratio,
    "orient": _cmd_orient,
    "xi": _cmd_xi,
    "threshold": _cmd_threshold,
    "oracle": _cmd_oracle,
    "certify": _cmd_certify,
    "sweep": _cmd_sweep,
    "bounds": _cmd_bounds,
}


def run(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except DomainError as exc:
        print(f"error: {exc.code}: {exc.detail}", file=sys.stderr)
        return 1


def main(argv: list[str] | None = None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
