"""Batch command-line front end.

Subcommands: gen, analyze, moments, simulate, spectrum, joins, verdict.
Exit codes: 0 success, 2 usage error, 3 capability error (a documented cap
was exceeded); errors are emitted as JSON on stderr.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .diagnostics import Thresholds, csv_summary_row, report, verdict
from .errors import CapabilityError, ChromacountError, UsageError
from .forms import build_form, variance_from_index
from .graphs import FamilySpec, Graph, generate_family, load_edge_list, save_edge_list
from .moments import (
    exact_moments_bruteforce,
    exact_moments_kernel,
    exbad_moment_table,
    good_join_census,
    triangle_fourth_closed_form,
    triangle_sixth_asymptotic,
)
from .patterns import enumerate_copies, parse_pattern
from .simulate import exact_distribution, histogram_csv, sample_T
from .spectral import triangle_spectrum

INT_PARAMS = {"n", "k", "seed"}
FLOAT_PARAMS = {"b", "c", "p"}


def _parse_params(text: str | None) -> dict:
    out: dict = {}
    if not text:
        return out
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if "=" not in item:
            raise UsageError(f"parameter {item!r} is not of the form key=value")
        key, val = item.split("=", 1)
        key = key.strip()
        if key in INT_PARAMS:
            out[key] = int(val)
        elif key in FLOAT_PARAMS:
            # accept fractions like 3/16 for exact family constants
            if "/" in val:
                num, den = val.split("/", 1)
                out[key] = float(num) / float(den)
            else:
                out[key] = float(val)
        else:
            raise UsageError(f"unknown family parameter {key!r}")
    return out


def _load_graph(args) -> Graph:
    if bool(args.graph) == bool(args.family):
        raise UsageError("exactly one graph source: --graph PATH or --family NAME")
    if args.graph:
        with open(args.graph, "rb") as fh:
            return load_edge_list(fh)
    params = _parse_params(args.params)
    spec = FamilySpec(family=args.family, **params)
    return generate_family(spec)


def _thresholds(args) -> Thresholds:
    return Thresholds(eps_pair=args.eps_pair, eps_vertex=args.eps_vertex,
                      eps_strong=args.eps_strong, moment_tol=args.moment_tol,
                      influential_vertex_bound=args.vertex_bound)


def _emit(args, payload, csv_text: str | None = None):
    if getattr(args, "format", "json") == "csv":
        text = csv_text if csv_text is not None else ""
    else:
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _add_common(p, pattern_required=True):
    p.add_argument("--graph", help="edge-list file")
    p.add_argument("--family", help="generator family name")
    p.add_argument("--params", help="family parameters, e.g. n=4,b=3/16,c=2")
    if pattern_required:
        p.add_argument("--pattern", required=True,
                       help="edge | triangle | path:k | cycle:k | complete:k | file:PATH")
    p.add_argument("--out", help="output path (default stdout)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int,
                   default=int(os.environ.get("CHROMACOUNT_THREADS", "1")))
    p.add_argument("--deterministic", action="store_true",
                   help="exclude timestamps from JSON output")
    p.add_argument("--eps-pair", type=float, default=0.25)
    p.add_argument("--eps-vertex", type=float, default=0.25)
    p.add_argument("--eps-strong", type=float, default=0.1)
    p.add_argument("--moment-tol", type=float, default=0.05)
    p.add_argument("--vertex-bound", type=int, default=16)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="chromacount",
                                 description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a family graph as an edge list")
    _add_common(p, pattern_required=False)

    p = sub.add_parser("analyze", help="full diagnostics report")
    _add_common(p)
    p.add_argument("--samples", type=int, default=0,
                   help="also attach a Monte Carlo run of this size")

    p = sub.add_parser("moments", help="moment computations")
    _add_common(p)
    p.add_argument("--method", choices=("bruteforce", "kernel", "closed-form"),
                   default="closed-form")
    p.add_argument("--kernel", choices=("rademacher", "gaussian"),
                   default="rademacher")
    p.add_argument("--order", type=int, default=4)
    p.add_argument("--sixth", action="store_true",
                   help="include the itemized asymptotic sixth-moment terms")
    p.add_argument("--table", help="comma list of sizes for the three-part "
                                   "family convergence table (family exbad_full)")

    p = sub.add_parser("simulate", help="Monte Carlo sampling")
    _add_common(p)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--exact", action="store_true",
                   help="exact distribution instead of sampling (small hosts)")

    p = sub.add_parser("spectrum", help="triangle quadratic-form eigenvalues")
    _add_common(p)

    p = sub.add_parser("joins", help="copy 4-tuple census and good joins")
    _add_common(p)
    p.add_argument("--cap", type=int, default=10**9)

    p = sub.add_parser("verdict", help="normality verdict")
    _add_common(p)
    return ap


def _cmd_gen(args) -> int:
    if args.graph:
        raise UsageError("gen builds from --family, not --graph")
    if not args.family:
        raise UsageError("gen requires --family")
    params = _parse_params(args.params)
    if args.seed and "seed" not in params:
        params["seed"] = args.seed
    g = generate_family(FamilySpec(family=args.family, **params))
    if args.out:
        save_edge_list(g, args.out)
    else:
        save_edge_list(g, sys.stdout)
    return 0


def _cmd_analyze(args) -> int:
    g = _load_graph(args)
    h = parse_pattern(args.pattern)
    rep = report(g, h, thresholds=_thresholds(args), samples=args.samples,
                 seed=args.seed, deterministic=args.deterministic)
    _emit(args, rep, csv_text="\n".join(csv_summary_row(rep)) + "\n")
    return 0


def _cmd_moments(args) -> int:
    if args.table:
        if args.family != "exbad_full":
            raise UsageError("--table applies to --family exbad_full")
        params = _parse_params(args.params)
        ns = [int(x) for x in args.table.split(",") if x.strip()]
        rows = exbad_moment_table(ns, params["b"], params["c"])
        _emit(args, {"schema": "chromacount/1", "convergence_table": rows})
        return 0
    g = _load_graph(args)
    h = parse_pattern(args.pattern)
    idx = enumerate_copies(g, h)
    if args.method == "bruteforce":
        rep = exact_moments_bruteforce(g, idx, k=args.order)
        payload = rep.to_json()
    elif args.method == "kernel":
        rep = exact_moments_kernel(build_form(idx), k=args.order,
                                   kernel=args.kernel)
        payload = rep.to_json()
    else:
        rep = triangle_fourth_closed_form(g, h, idx)
        payload = rep.to_json()
        if args.sixth:
            payload["sixth_asymptotic"] = triangle_sixth_asymptotic(g, h, idx).to_json()
    _emit(args, payload)
    return 0


def _cmd_simulate(args) -> int:
    if args.samples < 1 and not args.exact:
        raise UsageError("--samples must be >= 1")
    g = _load_graph(args)
    h = parse_pattern(args.pattern)
    if args.exact:
        dist = exact_distribution(g, h)
        _emit(args, dist.to_json())
        return 0
    run = sample_T(g, h, args.samples, seed=args.seed, workers=args.threads)
    _emit(args, run.to_json(), csv_text=histogram_csv(run))
    return 0


def _cmd_spectrum(args) -> int:
    g = _load_graph(args)
    h = parse_pattern(args.pattern)
    if not h.is_triangle:
        raise UsageError("spectrum applies to the triangle pattern")
    idx = enumerate_copies(g, h)
    spec = triangle_spectrum(g, idx)
    _emit(args, {
        "schema": "chromacount/1",
        "eigenvalues": [float(x) for x in spec.eigenvalues],
        "computed": spec.computed,
        "dimension": spec.total_dimension,
        "method": spec.method,
        "two_sum_squares": spec.two_sum_squares(),
    })
    return 0


def _cmd_joins(args) -> int:
    g = _load_graph(args)
    h = parse_pattern(args.pattern)
    idx = enumerate_copies(g, h)
    var = variance_from_index(idx)
    census = good_join_census(g, h, idx, var, cap=args.cap)
    _emit(args, census.to_json())
    return 0


def _cmd_verdict(args) -> int:
    g = _load_graph(args)
    h = parse_pattern(args.pattern)
    idx = enumerate_copies(g, h)
    var = variance_from_index(idx)
    fourth = None
    if var > 0 and h.is_triangle:
        fourth = triangle_fourth_closed_form(g, h, idx).normalized_even[4]
    elif var > 0:
        try:
            rep = exact_moments_kernel(build_form(idx), k=4, kernel="rademacher")
            fourth = rep.normalized_even[4]
        except CapabilityError:
            fourth = None
    v = verdict(g, h, idx, var, fourth, thresholds=_thresholds(args))
    payload = {"schema": "chromacount/1", **v.to_json()}
    header = "classification,rule"
    _emit(args, payload, csv_text=f"{header}\n{v.classification},{v.rule}\n")
    return 0


_COMMANDS = {
    "gen": _cmd_gen,
    "analyze": _cmd_analyze,
    "moments": _cmd_moments,
    "simulate": _cmd_simulate,
    "spectrum": _cmd_spectrum,
    "joins": _cmd_joins,
    "verdict": _cmd_verdict,
}


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except CapabilityError as exc:
        json.dump({"error": "capability", "detail": str(exc)}, sys.stderr)
        sys.stderr.write("\n")
        return 3
    except UsageError as exc:
        json.dump({"error": "usage", "detail": str(exc)}, sys.stderr)
        sys.stderr.write("\n")
        return 2
    except ChromacountError as exc:
        json.dump({"error": exc.__class__.__name__, "detail": str(exc)}, sys.stderr)
        sys.stderr.write("\n")
        return 1
    except FileNotFoundError as exc:
        json.dump({"error": "usage", "detail": str(exc)}, sys.stderr)
        sys.stderr.write("\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
