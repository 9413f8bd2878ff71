"""Acceptance criteria 1-11, one recorded pass/fail line each."""

import math
import subprocess
import sys
import time
from pathlib import Path

import numpy as np

from ksystems import properties
from ksystems.census import enumerate_census
from ksystems.fuchsian import PRESETS
from ksystems.ksystem_tools import is_ksystem, max_ksystem
from ksystems.lattice_curves import enumerate_curves, intersection_number
from ksystems.twist import KINDS, growth_fit
from oracles import brute_force_classes, clique_oracle

INPUTS = Path(__file__).resolve().parent.parent / "inputs"


def test_criterion_01_torus_intersections(record):
    t0 = time.perf_counter()
    r = properties.torus_intersections(box=5, wiggles=60, seed=0)
    dt = time.perf_counter() - t0
    ok = r["pass"] and r["wiggled"] >= 50 and dt < 10
    assert record(1, ok, f"{r['pairs']} pairs ({r['wiggled']} wiggled), "
                         f"{len(r['mismatches'])} mismatches, {dt:.1f}s")


def test_criterion_02_max_ksystem(record):
    t0 = time.perf_counter()
    U = enumerate_curves(5)
    got, want = {}, {}
    for k in (0, 1, 2):
        res = max_ksystem(U, k, box=5)
        assert is_ksystem(res.witness, k)
        got[k] = res.size
        want[k] = clique_oracle(U, k, intersection_number)
    dt = time.perf_counter() - t0
    ok = got == want and got[0] == 1 and dt < 60
    assert record(2, ok, f"sizes {got} vs oracle {want}, {dt:.1f}s")


def test_criterion_03_modular_census(record):
    st = PRESETS["modular"]()
    c = enumerate_census(st, 2.0, 6)
    oracle = brute_force_classes(st.generators, 2.0, 4)
    target = 2 * math.acosh(1.5)
    ok = (c.count == 3 == len(oracle)
          and all(abs(x.length - target) <= 1e-6 for x in c.classes)
          and all(abs(v - target) <= 1e-6 for v in oracle.values()))
    assert record(3, ok, f"{c.count} classes (oracle {len(oracle)}), lengths "
                         f"{sorted(round(x.length, 9) for x in c.classes)}")


def _census_rows():
    if not hasattr(_census_rows, "cache"):
        _census_rows.cache = properties.census_checks(Ls=(2.0, 3.0, 4.0))
    return _census_rows.cache["rows"]


def test_criterion_04_dichotomy(record):
    rows = _census_rows()
    structures = {r["structure"] for r in rows}
    worst = min((r["dichotomy_min_margin"] for r in rows if r["dichotomy_min_margin"] is not None))
    undet = sum(r["undetermined"] for r in rows)
    pairs = sum(r["pairs"] for r in rows)
    ok = len(structures) >= 3 and all(r["dichotomy_pass"] for r in rows) and undet == 0 and worst >= -1e-9
    assert record(4, ok, f"{len(structures)} structures, {pairs} pairs, min margin {worst:.4g}, "
                         f"{undet} undetermined")


def test_criterion_05_census_bound(record):
    rows = _census_rows()
    bound_ok = all(r["bound_pass"] for r in rows)
    vol_ok = all(r["volume_pass"] for r in rows)
    short_ok = all(r["short_disjoint"] is not False for r in rows)
    ok = bound_ok and vol_ok and short_ok
    ratio = max(r["volume"] / r["budget"] for r in rows)
    assert record(5, ok, f"count<=bound {bound_ok}, volume<=budget {vol_ok} (max ratio {ratio:.3g}), "
                         f"short classes disjoint {short_ok}")


def test_criterion_06_growth(record):
    parts, ok = [], True
    for kind, target in zip(KINDS, (0.25, 0.5)):
        t0 = time.perf_counter()
        fit = growth_fit(kind, np.linspace(8, 14, 7))
        dt = time.perf_counter() - t0
        good = abs(fit.slope - target) <= 0.1 and dt < 120
        ok = ok and good
        parts.append(f"{kind} slope {fit.slope:.3f} (target {target}) {dt:.1f}s")
    assert record(6, ok, "; ".join(parts))


def test_criterion_07_twist_bound(record):
    r = properties.twist_checks(n_cal=100, n_max=200, rs=(0.02, 0.05))
    ok = all(c["pass"] for f in r["families"] for c in f["checks"])
    detail = "; ".join(f"{f['kind']} C0={f['c0']:.4f} max residual "
                       f"{max(c['max_residual'] for c in f['checks']):.4f}" for f in r["families"])
    assert record(7, ok, detail)


def test_criterion_08_slide(record):
    r = properties.slide_property(instances=200, seed=0)
    ok = r["pass"] and r["instances"] >= 200
    assert record(8, ok, f"{r['instances']} instances, {r['pairs']} arc pairs, max by k "
                         f"{r['max_count']}, {len(r['violations'])} violations")


def test_criterion_09_projection(record):
    r = properties.projection_property(instances=100, seed=0)
    ok = r["pass"] and r["instances"] >= 100
    assert record(9, ok, f"{r['instances']} instances, totals {r['totals']}, "
                         f"{len(r['violations'])} violations")


def test_criterion_10_calculators(record):
    r = properties.bounds_checks()
    v = r["values"]
    assert record(10, r["pass"], f"remark3.1={v['remark3.1']}, prop3.1={v['prop3.1']:.9f}, "
                                 f"thm1.3={v['thm1.3']:.4f}, recursion failures "
                                 f"{len(r['recursion_failures'])}")


PIPELINES = [
    ["census", "--surface", str(INPUTS / "modular.json"), "-L", "2.0", "-R", "6"],
    ["census", "--surface", str(INPUTS / "sphere4.json"), "-L", "4", "-R", "8", "--check",
     "--format", "json"],
    ["census", "--surface", str(INPUTS / "level2.json"), "-L", "4", "-R", "8", "--check",
     "--format", "json"],
    ["search", "--model", "torus", "--k", "2", "--box", "5"],
    ["construct", "--family", "four-holed", "--r", "0.05", "--n-max", "50", "--format", "csv"],
    ["construct", "--family", "one-holed-torus", "--fit"],
    ["slide", "--seed", "5", "--k", "3"],
    ["project", "--seed", "7", "--k", "2"],
    ["bounds", "--id", "thm1.3", "--chi", "1", "--L", "1"],
    ["verify", "--suite", "all", "--seed", "0"],
]


def _run(args, threads, out):
    cmd = [sys.executable, "-m", "ksystems.cli", "--threads", str(threads)] + args + ["--out", str(out)]
    proc = subprocess.run(cmd, capture_output=True, text=True)
    return proc.returncode, out.read_bytes() if out.exists() else b""


def test_criterion_11_determinism(record, tmp_path):
    diffs = []
    for i, args in enumerate(PIPELINES):
        runs = [_run(args, th, tmp_path / f"{i}_{j}.out") for j, th in enumerate((1, 1, 4))]
        codes = {c for c, _ in runs}
        blobs = {b for _, b in runs}
        if len(blobs) != 1 or codes != {0} or not runs[0][1]:
            diffs.append(f"{args[0]}#{i} codes={sorted(codes)} variants={len(blobs)}")
    ok = not diffs
    assert record(11, ok, f"{len(PIPELINES)} pipelines x 3 runs (threads 1, 1, 4); "
                          + ("all byte-identical" if ok else "differences: " + ", ".join(diffs)))
