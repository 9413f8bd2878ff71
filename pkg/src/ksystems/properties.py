"""Seeded property runs shared by the ``verify`` subcommand and the test suite.

Each run returns a plain dict with a ``statement`` identifier, a ``pass``
flag and enough detail to locate a failure.
"""

from __future__ import annotations

import random
import time
from itertools import combinations

import numpy as np

from .bounds import BOUND_IDS, BoundSpec, eval_bound, recursion_bound
from .census import check_census_bound, enumerate_census, verify_dichotomy
from .flat_realization import bigon_reduce, line_curve, random_wiggle
from .fuchsian import PRESETS
from .ksystem_tools import is_ksystem, max_ksystem
from .lattice_curves import enumerate_curves, intersection_number
from .reductions import (bad_and_inessential_arcs, fill_puncture_classify,
                         random_projection_instance, random_slide_instance, slide_to_arcs,
                         verify_slide_bound)
from .twist import (KINDS, build_pinched, check_length_bound, family_lengths, fit_c0,
                    growth_fit)

DICHOTOMY_PRESETS = ("modular", "torus34", "level2", "sphere4")


def torus_intersections(box: int = 5, wiggles: int = 60, seed: int = 0) -> dict:
    t0 = time.perf_counter()
    curves = enumerate_curves(box)
    lines = {c: line_curve(c) for c in curves}
    bad = []
    n = 0
    for a, b in combinations(curves, 2):
        n += 1
        got = bigon_reduce(lines[a], lines[b]).count
        if got != intersection_number(a, b):
            bad.append([list(a), list(b), got])
    rng = random.Random(seed)
    small = enumerate_curves(min(box, 3))
    for _ in range(wiggles):
        a, b = rng.sample(small, 2)
        wa = random_wiggle(a, rng)
        wb = random_wiggle(b, rng)
        got = bigon_reduce(wa, wb, rng=rng).count
        n += 1
        if got != intersection_number(a, b):
            bad.append([list(a), list(b), got, "wiggled"])
    return {"statement": "torus-intersection", "pairs": n, "wiggled": wiggles,
            "mismatches": bad, "elapsed_s": time.perf_counter() - t0, "pass": not bad}


def ksystem_search(box: int = 5, ks=(0, 1, 2, 3), threads: int = 1) -> dict:
    U = enumerate_curves(box)
    sizes = {}
    problems = []
    for k in ks:
        r = max_ksystem(U, k, box=box, threads=threads)
        sizes[k] = r.size
        if not is_ksystem(r.witness, k):
            problems.append(f"witness for k={k} is not a {k}-system")
    if 0 in sizes and sizes[0] != 1:
        problems.append("k=0 must give exactly one curve")
    ordered = [sizes[k] for k in sorted(sizes)]
    if ordered != sorted(ordered):
        problems.append("size decreased with k")
    return {"statement": "ksystem-search", "sizes": {str(k): v for k, v in sizes.items()},
            "problems": problems, "pass": not problems}


def census_checks(presets=DICHOTOMY_PRESETS, Ls=(2.0, 3.0, 4.0), R: int = 8, threads: int = 1) -> dict:
    rows = []
    ok = True
    for name in presets:
        st = PRESETS[name]()
        for L in Ls:
            c = enumerate_census(st, L, R, threads=threads)
            g = verify_dichotomy(c, st, threads=threads)
            t = check_census_bound(c, st.signature, st)
            row = {"structure": name, "L": L, "count": c.count, "stable": c.stable,
                   "dichotomy_pass": g.passed, "dichotomy_min_margin": g.min_margin,
                   "undetermined": len(g.undetermined), "pairs": len(g.pairs),
                   "bound": t.bound, "bound_pass": t.count <= t.bound,
                   "volume": t.volume, "budget": t.budget, "volume_pass": t.volume <= t.budget,
                   "short_disjoint": t.short_pairs_disjoint}
            failed = [s for s, v in (("length-dichotomy", g.passed),
                                     ("census-bound", t.count <= t.bound),
                                     ("volume-budget", t.volume <= t.budget),
                                     ("short-curves-disjoint", t.short_pairs_disjoint is not False))
                      if not v]
            row["failed"] = failed
            ok = ok and not failed
            rows.append(row)
    return {"statement": "census", "rows": rows, "pass": ok}


def twist_checks(n_cal: int = 100, n_max: int = 200, rs=(0.02, 0.05), threads: int = 1) -> dict:
    out = {"statement": "twist", "families": [], "pass": True}
    for kind in KINDS:
        cal = build_pinched(kind, 0.05)
        c0 = fit_c0([(cal, family_lengths(cal, n_cal, threads))])
        fam = {"kind": kind, "c0": c0, "checks": []}
        for r in rs:
            tf = build_pinched(kind, r)
            bc = check_length_bound(tf, family_lengths(tf, n_max, threads), c0)
            fam["checks"].append({"r": r, "max_residual": bc.max_residual,
                                  "min_residual": bc.min_residual, "pass": bc.passed})
            out["pass"] = out["pass"] and bc.passed
        t0 = time.perf_counter()
        fit = growth_fit(kind, np.linspace(8, 14, 7), threads=threads)
        target = 0.25 if kind == "four-holed" else 0.5
        fam["growth"] = fit.to_dict()
        fam["growth"]["elapsed_s"] = time.perf_counter() - t0
        fam["growth_pass"] = abs(fit.slope - target) <= 0.1
        out["pass"] = out["pass"] and fam["growth_pass"]
        out["families"].append(fam)
    return out


def slide_property(instances: int = 200, seed: int = 0, ks=(1, 2, 3)) -> dict:
    viol = []
    pairs = 0
    worst = {k: 0 for k in ks}
    for i in range(instances):
        rng = random.Random(seed * 1_000_003 + i)
        k = ks[i % len(ks)]
        curves, g, ux, orient = random_slide_instance(rng, k)
        res = slide_to_arcs(curves, g, ux, orient)
        rep = verify_slide_bound(res, k, curves)
        pairs += len(rep.pairs)
        worst[k] = max(worst[k], rep.max_count)
        if not rep.passed:
            viol.append({"instance": i, "k": k, "violations": rep.violations,
                         "certificate_failures": rep.certificate_failures})
    return {"statement": "slide-bound", "instances": instances, "pairs": pairs,
            "max_count": {str(k): v for k, v in worst.items()}, "violations": viol,
            "pass": not viol}


def projection_property(instances: int = 100, seed: int = 0, ks=(1, 2, 3)) -> dict:
    viol = []
    totals = {"bad": 0, "inessential": 0, "bad_pairs": 0, "inessential_pairs": 0, "type2": 0}
    for i in range(instances):
        rng = random.Random(seed * 1_000_003 + i)
        k = ks[i % len(ks)]
        curves, marked = random_projection_instance(rng, k, extra_punctures=1 + i % 3)
        cls = fill_puncture_classify(curves, marked, marked.punctures[0], k)
        rep = bad_and_inessential_arcs(cls, k)
        totals["bad"] += len(cls.bad)
        totals["inessential"] += len(cls.inessential)
        totals["bad_pairs"] += len(rep.bad_pairs)
        totals["inessential_pairs"] += len(rep.inessential_pairs)
        totals["type2"] += sum(1 for b in cls.bad if b.kind == 2)
        if not rep.passed:
            viol.append({"instance": i, "k": k, "violations": rep.violations})
    return {"statement": "projection-arcs", "instances": instances, "totals": totals,
            "violations": viol, "pass": not viol}


def bounds_checks() -> dict:
    vals = {
        "remark3.1": eval_bound(BoundSpec("remark3.1"), t=2, D=4),
        "prop3.1": eval_bound(BoundSpec("prop3.1"), t=2, iota=8),
        "thm1.3": eval_bound(BoundSpec("thm1.3"), t=1, L=1),
    }
    sweep_bad = []
    for g in range(11):
        for k in range(1, 5):
            for n in range(101):
                r = recursion_bound(g, n, k)
                if not r["consistent"]:
                    sweep_bad.append([g, n, k])
    ok = (vals["remark3.1"] == 15 and abs(vals["prop3.1"] - 4 * 32 ** 0.5) <= 1e-9
          and round(vals["prop3.1"], 3) == 22.627
          and abs(vals["thm1.3"] - 278.9) <= 0.1 and not sweep_bad)
    return {"statement": "bounds", "values": vals, "ids": list(BOUND_IDS),
            "recursion_failures": sweep_bad, "pass": ok}


SUITES = {
    "torus": torus_intersections,
    "search": ksystem_search,
    "census": census_checks,
    "twist": twist_checks,
    "slide": slide_property,
    "project": projection_property,
    "bounds": bounds_checks,
}
