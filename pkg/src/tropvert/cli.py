"""Command-line front end with deterministic JSON/CSV output.

Identical inputs produce byte-identical outputs: all JSON is emitted with
sorted keys, compact separators, and LF endings, and rationals are printed
as "num/den".  Precondition violations exit with code 2 and a machine
readable error object on stderr; an internal consistency failure (which
would mean an inconsistent diagram) exits with code 3.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import delpezzo, embed, geometry
from .scattering import CompletionError, complete, diagram_dumps, make_basic
from .series import coeff_str

DEFAULT_ORDER = 12
DEFAULT_MAX_ORDER = 24

EXIT_OK = 0
EXIT_PRECONDITION = 2
EXIT_INCONSISTENT = 3


class CliError(ValueError):
    pass


def _max_order() -> int:
    raw = os.environ.get("SCATTER_MAX_ORDER")
    if raw is None:
        return DEFAULT_MAX_ORDER
    try:
        return int(raw)
    except ValueError:
        raise CliError("SCATTER_MAX_ORDER must be an integer, got %r" % raw)


def _check_order(order: int) -> int:
    cap = _max_order()
    if order < 1:
        raise CliError("truncation order must be at least 1")
    if order > cap:
        raise CliError(
            "order %d exceeds the cap %d; raise SCATTER_MAX_ORDER to override" % (order, cap)
        )
    return order


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def _parse_rational(text: str) -> Fraction:
    try:
        num, _, den = text.partition("/")
        if den == "":
            return Fraction(int(num))
        return Fraction(int(num), int(den))
    except (ValueError, ZeroDivisionError):
        raise CliError("malformed rational %r (expected num or num/den)" % text)


def _parse_pair(text: str) -> tuple:
    # parsed raw, not through Fraction: 8/2 must reach the coprimality check
    num, sep, den = text.partition("/")
    if not sep:
        den = "1"
    try:
        return (int(num), int(den))
    except ValueError:
        raise CliError("malformed pair %r (expected p/q with integers)" % text)


def _parse_direction(text: str) -> tuple:
    parts = text.split(",")
    if len(parts) != 2:
        raise CliError("malformed direction %r (expected a,b)" % text)
    try:
        return (int(parts[0]), int(parts[1]))
    except ValueError:
        raise CliError("malformed direction %r (expected integers)" % text)


def _emit(text: str, out_path) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


# -- subcommand payloads -----------------------------------------------------


def _count_payload(surface: str, p: int, q: int, order) -> dict:
    if order is None:
        # the derived order is subject to the same cost cap as an explicit one
        model = delpezzo.get_model(surface)
        needed = delpezzo.required_order(model, delpezzo.wp(model, p, q))
        if needed is not None and needed >= 1:
            _check_order(needed)
    detail = delpezzo.count_detail(surface, p, q, order)
    model = delpezzo.get_model(surface)
    reason = None
    if model.strands == 2:
        reason = delpezzo.exists_wp_curve(surface, p, q).reason
    return {
        "surface": detail.surface,
        "p": detail.p,
        "q": detail.q,
        "wp": [detail.wp.a, detail.wp.b],
        "nu": detail.nu,
        "coef_poly": [[k, coeff_str(c)] for k, c in detail.coef_poly],
        "N": detail.count,
        "reason": reason,
    }


def _exists_payload(surface: str, p: int, q: int) -> dict:
    result = delpezzo.exists_wp_curve(surface, p, q)
    in_lattice = result.reason != "lattice-miss"
    model = delpezzo.get_model(surface)
    index = None
    if in_lattice:
        index = delpezzo.nu_of_target(model, result.wp)
    return {
        "surface": result.surface,
        "p": result.p,
        "q": result.q,
        "wp": [result.wp.a, result.wp.b],
        "nu": index,
        "coef_poly": None,
        "N": None,
        "reason": result.reason,
        "exists": result.exists,
        "swapped": result.swapped,
    }


def _count_worker(args):
    surface, p, q, order = args
    return _count_payload(surface, p, q, order)


def staircase_csv_text(a_min, a_max, samples: int) -> str:
    rows = embed.staircase_table(a_min, a_max, samples)
    lines = ["a_num,a_den,c_num,c_den,regime"]
    for a, c, regime in rows:
        lines.append(
            "%d,%d,%d,%d,%s" % (a.numerator, a.denominator, c.numerator, c.denominator, regime)
        )
    return "\n".join(lines) + "\n"


# -- subcommand handlers ---------------------------------------------------------


def _cmd_scatter(args) -> int:
    order = _check_order(args.order if args.order is not None else DEFAULT_ORDER)
    directions = [_parse_direction(d) for d in args.dirs]
    try:
        diagram = complete(make_basic(directions, args.l, order))
    except ValueError as exc:
        raise CliError(str(exc))
    _emit(diagram_dumps(diagram) + "\n", args.out)
    return EXIT_OK


def _resolve_pairs(args) -> list:
    if args.pairs:
        if args.p is not None or args.q is not None:
            raise CliError("pass either --p/--q or --pairs, not both")
        return [_parse_pair(text) for text in args.pairs]
    if args.p is None or args.q is None:
        raise CliError("need --p and --q (or --pairs)")
    return [(args.p, args.q)]


def _cmd_count(args) -> int:
    pairs = _resolve_pairs(args)
    order = args.order
    if order is not None:
        _check_order(order)
    jobs = [(args.surface, p, q, order) for p, q in pairs]
    if args.jobs and args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            payloads = list(pool.map(_count_worker, jobs))
    else:
        payloads = [_count_worker(job) for job in jobs]
    if args.pairs:
        _emit(_dumps(payloads), args.out)
    else:
        _emit(_dumps(payloads[0]), args.out)
    return EXIT_OK


def _cmd_exists(args) -> int:
    pairs = _resolve_pairs(args)
    payloads = [_exists_payload(args.surface, p, q) for p, q in pairs]
    if args.pairs:
        _emit(_dumps(payloads), args.out)
    else:
        _emit(_dumps(payloads[0]), args.out)
    return EXIT_OK


def _cmd_embed(args) -> int:
    if args.table:
        a_min, a_max = _parse_rational(args.table[0]), _parse_rational(args.table[1])
        try:
            samples = int(args.table[2])
        except ValueError:
            raise CliError("sample count must be an integer")
        try:
            _emit(staircase_csv_text(a_min, a_max, samples), args.out)
        except ValueError as exc:
            raise CliError(str(exc))
        return EXIT_OK
    if args.a is None:
        raise CliError("need --a num/den or --table a_min a_max n")
    a = _parse_rational(args.a)
    try:
        value = embed.c_ball_stab(a)
    except ValueError as exc:
        raise CliError(str(exc))
    _emit(_dumps({"c": coeff_str(value.c), "regime": value.regime_tag}), args.out)
    return EXIT_OK


def _cmd_dmin(args) -> int:
    try:
        result = geometry.d_min_certified(args.p, args.q)
        d = result.value
        payload = {
            "p": args.p,
            "q": args.q,
            "d": d,
            "certified": result.certified,
            "delta": coeff_str(geometry.delta(d, args.p, args.q)),
            "delta_minus": coeff_str(geometry.delta_minus(d, args.p, args.q)),
        }
    except ValueError as exc:
        raise CliError(str(exc))
    _emit(_dumps(payload), args.out)
    return EXIT_OK


def _cmd_orbit(args) -> int:
    start = _parse_rational(args.start)
    out = [start]
    try:
        for _ in range(args.steps):
            if args.map == "S":
                out.append(geometry.S_map(args.k, out[-1]))
            else:
                out.append(geometry.R_map(args.k, out[-1]))
    except ValueError as exc:
        raise CliError(str(exc))
    payload = {
        "k": args.k,
        "map": args.map,
        "start": coeff_str(start),
        "orbit": [coeff_str(x) for x in out],
    }
    _emit(_dumps(payload), args.out)
    return EXIT_OK


def _cmd_reduce(args) -> int:
    try:
        p0, q0, steps = geometry.seed_reduce(args.k, args.p, args.q, args.delta)
    except (ValueError, geometry.SeedReductionError) as exc:
        raise CliError(str(exc))
    _emit(_dumps({"p0": p0, "q0": q0, "steps": steps}), args.out)
    return EXIT_OK


def _cmd_report(args) -> int:
    from . import report

    order = _check_order(args.order)
    model = delpezzo.get_model(args.surface)
    diagram = delpezzo.completed_basic(model.directions, model.multiplicities, order)
    written = report.write_report(
        args.outdir, diagram, a_min=1, a_max=_parse_rational(args.a_max), samples=args.samples
    )
    _emit(_dumps({"written": written}), None)
    return EXIT_OK


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tropvert",
        description="Exact scattering diagrams and staircase arithmetic.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    scatter = sub.add_parser("scatter", help="complete a basic scattering diagram")
    scatter.add_argument("--dirs", nargs="+", required=True, metavar="A,B")
    scatter.add_argument("--l", nargs="+", type=int, required=True, metavar="L")
    scatter.add_argument("--order", type=int, default=None)
    scatter.add_argument("--out")
    scatter.set_defaults(func=_cmd_scatter)

    def pq_options(cmd, with_order: bool):
        cmd.add_argument("--surface", required=True, choices=list(delpezzo.SURFACES))
        cmd.add_argument("--p", type=int)
        cmd.add_argument("--q", type=int)
        cmd.add_argument("--pairs", nargs="+", metavar="P/Q")
        if with_order:
            cmd.add_argument("--order", type=int, default=None)
            cmd.add_argument("--jobs", type=int, default=1)
        cmd.add_argument("--out")

    count = sub.add_parser("count", help="count well-placed rational curves")
    pq_options(count, with_order=True)
    count.set_defaults(func=_cmd_count)

    exists = sub.add_parser("exists", help="classify existence of a well-placed curve")
    pq_options(exists, with_order=False)
    exists.set_defaults(func=_cmd_exists)

    embed_cmd = sub.add_parser("embed", help="evaluate the stabilized embedding function")
    embed_cmd.add_argument("--a", metavar="NUM/DEN")
    embed_cmd.add_argument("--table", nargs=3, metavar=("A_MIN", "A_MAX", "N"))
    embed_cmd.add_argument("--out")
    embed_cmd.set_defaults(func=_cmd_embed)

    dmin = sub.add_parser("dmin", help="certified minimal degree for a plane cusp")
    dmin.add_argument("--p", type=int, required=True)
    dmin.add_argument("--q", type=int, required=True)
    dmin.add_argument("--out")
    dmin.set_defaults(func=_cmd_dmin)

    orbit = sub.add_parser("orbit", help="iterate the corner symmetry maps")
    orbit.add_argument("--k", type=int, required=True)
    orbit.add_argument("--start", required=True, metavar="NUM/DEN")
    orbit.add_argument("--steps", type=int, default=5)
    orbit.add_argument("--map", choices=["S", "R"], default="S")
    orbit.add_argument("--out")
    orbit.set_defaults(func=_cmd_orbit)

    reduce_cmd = sub.add_parser("reduce", help="mutation reduction to a seed pair")
    reduce_cmd.add_argument("--k", type=int, required=True)
    reduce_cmd.add_argument("--p", type=int, required=True)
    reduce_cmd.add_argument("--q", type=int, required=True)
    reduce_cmd.add_argument("--delta", type=int, default=0)
    reduce_cmd.add_argument("--out")
    reduce_cmd.set_defaults(func=_cmd_reduce)

    report_cmd = sub.add_parser("report", help="write staircase/diagram data and figures")
    report_cmd.add_argument("--outdir", required=True)
    report_cmd.add_argument("--surface", default="CP2", choices=list(delpezzo.SURFACES))
    report_cmd.add_argument("--order", type=int, default=6)
    report_cmd.add_argument("--a-max", default="9", dest="a_max")
    report_cmd.add_argument("--samples", type=int, default=400)
    report_cmd.set_defaults(func=_cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        sys.stderr.write(_dumps({"error": {"code": EXIT_PRECONDITION, "message": str(exc)}}))
        return EXIT_PRECONDITION
    except ValueError as exc:
        sys.stderr.write(_dumps({"error": {"code": EXIT_PRECONDITION, "message": str(exc)}}))
        return EXIT_PRECONDITION
    except (CompletionError, AssertionError) as exc:
        sys.stderr.write(_dumps({"error": {"code": EXIT_INCONSISTENT, "message": str(exc)}}))
        return EXIT_INCONSISTENT


if __name__ == "__main__":
    sys.exit(main())
