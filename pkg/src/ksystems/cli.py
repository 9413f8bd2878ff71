"""Command-line entry point: ``ksys <subcommand> ...``.

Exit codes: 0 when every check passes, 1 when a checked statement fails,
2 on usage or I/O errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
from fractions import Fraction

import numpy as np

from . import properties
from .bounds import BOUND_IDS, BoundSpec, corollary_theta, eval_bound, recursion_bound, required_inputs
from .census import check_census_bound, enumerate_census, verify_dichotomy
from .flat_realization import FlatCurve, MarkedSurface
from .fuchsian import PRESETS, StructureError, build_structure
from .ksystem_tools import max_ksystem
from .lattice_curves import enumerate_curves, from_csv
from .reductions import (NotMinimalError, bad_and_inessential_arcs, fill_puncture_classify,
                         random_projection_instance, random_slide_instance, slide_to_arcs,
                         verify_slide_bound)
from .twist import KINDS, build_pinched, family_lengths, growth_fit, lengths_csv

class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _threads(args) -> int:
    if args.threads is not None:
        return max(1, args.threads)
    env = os.environ.get("KSYS_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"KSYS_THREADS must be an integer, got {env!r}")
    return 1


def _strip_timing(obj):
    if isinstance(obj, dict):
        # keep the report shape but zero the clock so output is reproducible
        return {k: (0 if k == "elapsed_ms" else _strip_timing(v))
                for k, v in obj.items() if k != "elapsed_s"}
    if isinstance(obj, list):
        return [_strip_timing(v) for v in obj]
    return obj


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def emit(report, fmt: str, path, timing: bool = False):
    """Write a report (dict for json, CSV text for csv) to path or stdout."""
    if fmt == "json":
        if not timing:
            report = _strip_timing(report)
        text = json.dumps(_jsonable(report), sort_keys=True, indent=2) + "\n"
    else:
        text = report
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}")


def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}")


def _rows_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# ------------------------------------------------------------- subcommands

def cmd_census(args) -> int:
    if args.preset:
        spec = {"construction": "preset", "name": args.preset}
    elif args.surface:
        spec = _read_json(args.surface)
    else:
        raise UsageError("census needs --surface or --preset")
    try:
        st = build_structure(spec)
    except (StructureError, KeyError) as exc:
        raise UsageError(f"bad structure: {exc}")
    threads = _threads(args)
    census = enumerate_census(st, args.L, args.R, threads=threads, simple_only=args.simple)
    if census.warning:
        print(f"warning: {census.warning}", file=sys.stderr)
    ok = True
    report = {"L": args.L, "R": args.R, "count": census.count, "stable": census.stable,
              "warning": census.warning, "mode": census.mode,
              "classes": [{"word": c.name, "length": c.length, "trace": abs(c.trace)}
                          for c in census.classes]}
    if args.check:
        g = verify_dichotomy(census, st, threads=threads)
        t = check_census_bound(census, st.signature, st)
        report["dichotomy"] = g.to_dict()
        report["bound"] = t.to_dict()
        ok = g.passed and t.passed
        if not g.passed:
            print("failed: length-dichotomy", file=sys.stderr)
        if not t.passed:
            print("failed: census-bound/volume-budget/short-curves-disjoint", file=sys.stderr)
    if args.format == "csv":
        emit(census.to_csv(), "csv", args.out)
        if args.report:
            emit(report, "json", args.report)
    else:
        emit(report, "json", args.out)
    return 0 if ok else 1


def cmd_search(args) -> int:
    if args.model not in ("torus", "punctured-torus"):
        raise UsageError("model must be torus or punctured-torus")
    if args.curves:
        try:
            with open(args.curves) as fh:
                universe = from_csv(fh.read())
        except OSError as exc:
            raise UsageError(str(exc))
        box = None
    else:
        if args.box < 1:
            raise UsageError("--box must be >= 1")
        universe = enumerate_curves(args.box)
        box = args.box
    if args.k < 0:
        raise UsageError("--k must be >= 0")
    res = max_ksystem(universe, args.k, box=box, threads=_threads(args))
    d = res.to_dict()
    d["model"] = args.model
    emit(d, "json", args.out, args.timing)
    return 0


def cmd_construct(args) -> int:
    try:
        if args.fit:
            Ls = np.linspace(args.L_min, args.L_max, args.points)
            fit = growth_fit(args.family, Ls, c=args.c, threads=_threads(args))
            emit(fit.to_dict(), "json", args.out)
            return 0
        tf = build_pinched(args.family, args.r)
    except ValueError as exc:
        raise UsageError(str(exc))
    rows = family_lengths(tf, args.n_max, threads=_threads(args))
    if args.format == "csv":
        emit(lengths_csv(rows), "csv", args.out)
    else:
        emit({"family": args.family, "r": args.r, "tau0": tf.tau0,
              "lengths": [[n, l] for n, l in rows]}, "json", args.out)
    return 0


def _load_system(data):
    curves = [FlatCurve.from_json(c) for c in data["curves"]]
    marked = MarkedSurface.from_json(data.get("marked", {}))
    return curves, marked


def cmd_slide(args) -> int:
    if args.instance:
        data = _read_json(args.instance)
        curves, _ = _load_system(data)
        g = int(data.get("gamma", 0))
        ux = Fraction(str(data.get("x", "1/3")))
        orient = int(data.get("orientation", 1))
        k = int(data.get("k", args.k))
    else:
        rng = random.Random(args.seed)
        k = args.k
        curves, g, ux, orient = random_slide_instance(rng, k)
    try:
        res = slide_to_arcs(curves, g, ux, orient)
    except ValueError as exc:
        raise UsageError(str(exc))
    rep = verify_slide_bound(res, k, curves)
    out = rep.to_dict()
    out["arcs"] = [{"source": a.source, "arc": a.arc.to_json()} for a in res.arcs]
    out["x"] = list(res.x)
    emit(out, "json", args.out)
    if not rep.passed:
        print("failed: slide-bound", file=sys.stderr)
    return 0 if rep.passed else 1


def cmd_project(args) -> int:
    if args.instance:
        data = _read_json(args.instance)
        curves, marked = _load_system(data)
        p = tuple(Fraction(str(v)) for v in data.get("p", marked.to_json()["punctures"][0]))
        k = int(data.get("k", args.k))
    else:
        rng = random.Random(args.seed)
        k = args.k
        curves, marked = random_projection_instance(rng, k, extra_punctures=args.extra)
        p = marked.punctures[0]
    try:
        cls = fill_puncture_classify(curves, marked, p, k)
    except NotMinimalError as exc:
        raise UsageError(f"input not in minimal position: {exc}")
    except ValueError as exc:
        raise UsageError(str(exc))
    rep = bad_and_inessential_arcs(cls, k)
    out = {"classification": cls.to_dict(), "report": rep.to_dict(),
           "marked": marked.to_json(), "curves": [c.to_json() for c in curves]}
    emit(out, "json", args.out)
    for v in rep.violations:
        print(f"failed: {v['rule']}", file=sys.stderr)
    return 0 if rep.passed else 1


def cmd_bounds(args) -> int:
    consts = {}
    if args.C is not None:
        consts["C"] = args.C
    if args.mu is not None:
        consts["mu"] = args.mu
    if args.base is not None:
        consts["base"] = args.base
    if args.id == "corollary":
        if args.n is None:
            raise UsageError("corollary needs --n")
        try:
            out = corollary_theta(args.n, args.k or 2, args.g or 0, consts.get("C", 1.0),
                                  consts.get("base", 0.0))
        except ValueError as exc:
            raise UsageError(str(exc))
        emit(out, "json", args.out)
        return 0 if out["consistent"] else 1
    if args.id == "recursion":
        if args.n is None or args.k is None:
            raise UsageError("recursion needs --n and --k")
        out = recursion_bound(args.g or 0, args.n, args.k, consts.get("C", 1.0),
                              consts.get("base", 0.0), cubic=args.cubic)
        emit(out, "json", args.out)
        return 0 if out["consistent"] else 1
    inputs = {"t": args.chi, "k": args.k, "L": args.L, "D": args.D, "iota": args.iota,
              "g": args.g, "n": args.n}
    need = required_inputs(args.id)
    inputs = {k: v for k, v in inputs.items() if k in need and v is not None}
    try:
        spec = BoundSpec(args.id, consts)
        value = eval_bound(spec, **inputs)
    except ValueError as exc:
        raise UsageError(str(exc))
    emit({"id": args.id, "inputs": inputs, "constants": spec.constants, "value": value},
         "json", args.out)
    return 0


def cmd_verify(args) -> int:
    names = list(properties.SUITES) if args.suite == "all" else [args.suite]
    threads = _threads(args)
    results = {}
    for name in names:
        fn = properties.SUITES[name]
        kwargs = {}
        if name in ("slide", "project", "torus"):
            kwargs["seed"] = args.seed
        if name in ("search", "census", "twist"):
            kwargs["threads"] = threads
        results[name] = fn(**kwargs)
    failed = [r["statement"] for r in results.values() if not r["pass"]]
    for name, r in results.items():
        if name == "census":
            for row in r["rows"]:
                for s in row["failed"]:
                    print(f"failed: {s} on {row['structure']} at L={row['L']}", file=sys.stderr)
    for s in failed:
        print(f"failed: {s}", file=sys.stderr)
    emit({"suites": results, "failed": failed, "pass": not failed}, "json", args.out, args.timing)
    return 0 if not failed else 1


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="ksys", description="k-systems of curves workbench")
    ap.add_argument("--threads", type=int, default=None,
                    help="worker threads (falls back to KSYS_THREADS, then 1)")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)

    def common(p, fmt=("json",)):
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--format", choices=fmt, default=fmt[0])
        p.add_argument("--threads", type=int, default=argparse.SUPPRESS)

    p = sub.add_parser("census", help="primitive closed geodesics of length <= L")
    p.add_argument("--surface", help="structure JSON file")
    p.add_argument("--preset", choices=sorted(PRESETS))
    p.add_argument("-L", type=float, required=True)
    p.add_argument("-R", type=int, default=6, help="word-length radius")
    p.add_argument("--simple", action="store_true", help="keep simple classes only (S_{1,1})")
    p.add_argument("--check", action="store_true", help="run the dichotomy and bound checks")
    p.add_argument("--report", help="JSON report path when --format csv")
    common(p, ("csv", "json"))
    p.set_defaults(fn=cmd_census)

    p = sub.add_parser("search", help="maximum k-system within a box")
    p.add_argument("--model", default="torus")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--box", type=int, default=5)
    p.add_argument("--curves", help="CSV universe with columns p,q")
    p.add_argument("--timing", action="store_true", help="include elapsed_ms")
    common(p)
    p.set_defaults(fn=cmd_search)

    p = sub.add_parser("construct", help="twist families on pinched surfaces")
    p.add_argument("--family", choices=KINDS, default="four-holed")
    p.add_argument("--r", type=float, default=0.05)
    p.add_argument("--n-max", dest="n_max", type=int, default=100)
    p.add_argument("--fit", action="store_true", help="fit the growth exponent instead")
    p.add_argument("--L-min", dest="L_min", type=float, default=8.0)
    p.add_argument("--L-max", dest="L_max", type=float, default=14.0)
    p.add_argument("--points", type=int, default=7)
    p.add_argument("--c", type=float, default=None, help="r = exp(-L/k + c)")
    common(p, ("csv", "json"))
    p.set_defaults(fn=cmd_construct)

    p = sub.add_parser("slide", help="slide curves meeting gamma to arcs and check the bound")
    p.add_argument("--instance", help="instance JSON (curves, gamma, x, orientation, k)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--k", type=int, default=2)
    common(p)
    p.set_defaults(fn=cmd_slide)

    p = sub.add_parser("project", help="fill a puncture and check the arc systems")
    p.add_argument("--instance", help="instance JSON (marked, curves, p, k)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--extra", type=int, default=2, help="punctures besides p (random mode)")
    common(p)
    p.set_defaults(fn=cmd_project)

    p = sub.add_parser("bounds", help="evaluate a closed-form bound")
    p.add_argument("--id", required=True, choices=list(BOUND_IDS) + ["recursion", "corollary"])
    p.add_argument("--chi", type=float, help="|chi|")
    p.add_argument("--k", type=int)
    p.add_argument("--L", type=float)
    p.add_argument("--D", type=float)
    p.add_argument("--iota", type=float)
    p.add_argument("--g", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--C", type=float)
    p.add_argument("--mu", type=float)
    p.add_argument("--base", type=float)
    p.add_argument("--cubic", action="store_true")
    common(p)
    p.set_defaults(fn=cmd_bounds)

    p = sub.add_parser("verify", help="run seeded property suites")
    p.add_argument("--suite", choices=["all"] + list(properties.SUITES), default="all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--timing", action="store_true")
    common(p)
    p.set_defaults(fn=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
        if args.command is None:
            ap.print_usage(sys.stderr)
            return 2
        if not hasattr(args, "threads"):
            args.threads = None
        return args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
