"""Primitive closed geodesic censuses and the volume/dichotomy checks on them."""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .fuchsian import (TRACE_TOL, HyperbolicStructure, StructureError, axis_form,
                       canonical_cyclic, dist_to_axis, form_pairing, group_ball, inv,
                       is_proper_power, is_simple_on_punctured_torus, pair_geometry,
                       rebalance, word_str)
from .surface_core import SurfaceSig

MU = 0.2629
DEDUP_TOL = 1e-6


def epsilon_of_L(L: float) -> float:
    if L <= 0:
        raise ValueError("L must be positive")
    s2 = math.sinh(L / 2) ** 2
    return 0.5 * min(math.asinh(2 / s2), math.asin(min(1.0, 1 / s2)))


def distance_threshold(L: float) -> float:
    return math.asinh(2 / math.sinh(L / 2) ** 2)


def angle_threshold(L: float) -> float:
    return math.asin(min(1.0, 1 / math.sinh(L / 2) ** 2))


def tube_volume(length: float, eps: float) -> float:
    if eps < 0 or eps > math.pi / 2:
        raise ValueError("eps must lie in [0, pi/2]")
    if length <= 0:
        raise ValueError("length must be positive")
    return 8 * length * (math.cosh(eps) - 1)


def census_count_bound(L: float, t: int, mu: float = MU) -> float:
    return (1.5 + math.pi ** 2 / mu * math.exp(2 * L)) * t


@dataclass
class GeodesicClass:
    word: tuple
    length: float
    trace: float
    primitive: bool = True

    @property
    def name(self) -> str:
        return word_str(self.word)


@dataclass
class CensusResult:
    L: float
    classes: list
    complete_to_radius: int
    previous_count: Optional[int]
    mode: str = "exact"
    simple_only: bool = False

    @property
    def count(self) -> int:
        return len(self.classes)

    @property
    def stable(self) -> bool:
        return self.previous_count is not None and self.previous_count == self.count

    @property
    def warning(self) -> str:
        if self.previous_count is None:
            return "no radius R-1 comparison available"
        if not self.stable:
            return (f"count changed from {self.previous_count} to {self.count} "
                    f"between radius {self.complete_to_radius - 1} and {self.complete_to_radius}")
        return ""

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["word", "length", "trace", "primitive"])
        for c in self.classes:
            w.writerow([c.name, f"{c.length:.12f}", f"{abs(c.trace):.12f}", str(c.primitive).lower()])
        return buf.getvalue()


def _extend(words, mats, lmats, letters):
    """All one-letter reduced extensions of the words."""
    n = len(words)
    k = len(letters)
    ww = np.repeat(words, k, axis=0)
    new_letters = np.tile(letters, n)
    keep = ww[:, -1] != -new_letters
    mm = np.einsum("nij,ljk->nlik", mats, lmats).reshape(n * k, 2, 2)
    ww = np.concatenate([ww, new_letters[:, None]], axis=1)
    return ww[keep], mm[keep]


def _scan_branch(st: HyperbolicStructure, first: int, L: float, R: int):
    """Survivors per word length for words starting with ``first``."""
    letters = np.array([k for i in range(st.rank) for k in (i + 1, -(i + 1))])
    lmats = np.array([st.eval((int(k),)) for k in letters])
    tmax = 2 * math.cosh(L / 2) + 1e-9
    words = np.array([[first]])
    mats = st.eval((first,))[None]
    found = []  # (word_length, word tuple, trace)
    for n in range(1, R + 1):
        if n > 1:
            words, mats = _extend(words, mats, lmats, letters)
        cyc = words[:, 0] != -words[:, -1]
        tr = mats[:, 0, 0] + mats[:, 1, 1]
        at = np.abs(tr)
        if np.any(cyc & (at < 2 - TRACE_TOL)):
            bad = words[np.argmax(cyc & (at < 2 - TRACE_TOL))]
            raise StructureError(f"elliptic element {word_str(tuple(int(x) for x in bad))}")
        hit = np.nonzero(cyc & (at > 2 + TRACE_TOL) & (at <= tmax))[0]
        for i in hit:
            found.append((n, tuple(int(x) for x in words[i]), float(tr[i])))
    return found


def enumerate_census(st: HyperbolicStructure, L: float, R: int, threads: int = 1,
                     simple_only: bool = False) -> CensusResult:
    """Primitive geodesic classes of length <= L among words of length <= R."""
    if R < 1:
        raise ValueError("radius must be >= 1")
    if L <= 0:
        raise ValueError("L must be positive")
    if simple_only and (st.signature != SurfaceSig(1, 1) or st.rank != 2):
        raise ValueError("simplicity filter is available only on S_{1,1} with two generators")
    firsts = [k for i in range(st.rank) for k in (i + 1, -(i + 1))]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            parts = list(ex.map(lambda f: _scan_branch(st, f, L, R), firsts))
    else:
        parts = [_scan_branch(st, f, L, R) for f in firsts]

    best: dict = {}
    for part in parts:
        for n, w, tr in part:
            if is_proper_power(w):
                continue
            key = canonical_cyclic(w)
            if simple_only and not is_simple_on_punctured_torus(key):
                continue
            if key not in best or n < best[key][0]:
                best[key] = (n, tr)
    mode = "exact" if st.free else "numeric"
    classes = [GeodesicClass(k, 2 * math.acosh(abs(tr) / 2), tr) for k, (n, tr) in best.items()]
    classes.sort(key=lambda c: (round(c.length, 9), _order(c.word)))
    minlen = {k: n for k, (n, _) in best.items()}
    if mode == "numeric":
        classes = _numeric_dedup(st, classes)
        keys = {c.word for c in classes}
        minlen = {k: v for k, v in minlen.items() if k in keys}
    prev = sum(1 for c in classes if minlen[c.word] <= R - 1) if R > 1 else None
    return CensusResult(L, classes, R, prev, mode, simple_only)


def _order(w):
    return (len(w), tuple(2 * abs(x) - (x > 0) for x in w))


def _numeric_dedup(st, classes):
    """Merge classes whose axes are translates (best effort for non-free groups)."""
    if not classes:
        return classes
    reach = max(dist_to_axis(st.eval(c.word)) for c in classes) * 2 + 1
    ball = group_ball(st, min(reach, 8.0))
    g = ball.mats
    gi = np.array([inv(x) for x in g])
    kept = []
    for c in classes:
        m = st.eval(c.word)
        dup = False
        for k in kept:
            if abs(k.length - c.length) > DEDUP_TOL:
                continue
            conj = g @ m @ gi
            r = form_pairing(axis_form(st.eval(k.word))[None], axis_form(conj))
            if np.any(np.abs(r - 1) < DEDUP_TOL):
                dup = True
                break
        if not dup:
            kept.append(c)
    return kept


# ------------------------------------------------------------------ reports

@dataclass
class DichotomyReport:
    L: float
    epsilon: float
    pairs: list = field(default_factory=list)
    undetermined: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.undetermined and all(p["margin"] >= -1e-9 for p in self.pairs)

    @property
    def min_margin(self) -> Optional[float]:
        return min((p["margin"] for p in self.pairs), default=None)

    def to_dict(self) -> dict:
        return {"L": self.L, "epsilon": self.epsilon, "pass": self.passed,
                "pairs": self.pairs, "undetermined": self.undetermined}


def dichotomy_margin(verdict: str, value: float, L: float) -> float:
    if verdict == "crossing":
        return value - angle_threshold(L)
    return value - distance_threshold(L)


def _pair_ball(st, classes, reach):
    need = 0.0
    ls = [c.length for c in classes]
    ds = [dist_to_axis(st.eval(c.word)) for c in classes]
    top = sorted(zip(ls, ds), key=lambda x: -(x[0] / 2 + x[1]))[:2]
    need = sum(l / 2 + d for l, d in top) + reach + 1e-6
    return group_ball(st, need)


def verify_dichotomy(census: CensusResult, st: HyperbolicStructure,
                  lengths: Optional[list] = None, threads: int = 1) -> DichotomyReport:
    """Check the distance-or-angle alternative for every pair of census classes.

    ``lengths`` may override the class lengths, which only shifts the level
    used for the thresholds (used to exercise the failure path).
    """
    L = census.L if lengths is None else max(lengths)
    rep = DichotomyReport(L, epsilon_of_L(L))
    cls = census.classes
    if len(cls) < 2:
        return rep
    work, tr = rebalance(st)
    words = [tr(c.word) for c in cls]
    reach = distance_threshold(L) + 0.5
    ball = _pair_ball(work, [GeodesicClass(w, c.length, c.trace) for w, c in zip(words, cls)], reach)
    pairs = [(i, j) for i in range(len(cls)) for j in range(i + 1, len(cls))]

    def one(ij):
        i, j = ij
        return ij, pair_geometry(words[i], words[j], work, reach, ball)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(one, pairs))
    else:
        results = [one(p) for p in pairs]
    for (i, j), pg in results:
        rec = {"pair": [cls[i].name, cls[j].name], "verdict": pg.verdict}
        if pg.verdict == "undetermined":
            rep.undetermined.append(rec)
            continue
        val = pg.angle if pg.verdict == "crossing" else pg.distance
        rec["value"] = val
        rec["margin"] = dichotomy_margin(pg.verdict, val, L)
        rep.pairs.append(rec)
    return rep


@dataclass
class CensusBoundReport:
    count: int
    bound: float
    volume: float
    budget: float
    short_classes: list
    short_pairs_disjoint: Optional[bool]
    stable: bool

    @property
    def passed(self) -> bool:
        return (self.count <= self.bound and self.volume <= self.budget
                and self.short_pairs_disjoint is not False)

    def to_dict(self) -> dict:
        return {"count": self.count, "bound": self.bound, "volume": self.volume,
                "budget": self.budget, "short_classes": self.short_classes,
                "short_pairs_disjoint": self.short_pairs_disjoint, "stable": self.stable,
                "pass": self.passed}


def check_census_bound(census: CensusResult, sig: SurfaceSig,
                st: Optional[HyperbolicStructure] = None) -> CensusBoundReport:
    t = sig.t
    L = census.L
    eps = epsilon_of_L(L)
    vol = sum(tube_volume(c.length, eps) for c in census.classes)
    short = [c for c in census.classes if c.length < MU]
    disjoint: Optional[bool] = True
    if len(short) > 1:
        if st is None:
            disjoint = None
        else:
            work, tr = rebalance(st)
            for i in range(len(short)):
                for j in range(i + 1, len(short)):
                    pg = pair_geometry(tr(short[i].word), tr(short[j].word), work, 1.0)
                    if pg.verdict == "crossing":
                        disjoint = False
                    elif pg.verdict == "undetermined" and disjoint:
                        disjoint = None
    return CensusBoundReport(census.count, census_count_bound(L, t), vol, 4 * math.pi ** 2 * t,
                       [c.name for c in short], disjoint, census.stable)
