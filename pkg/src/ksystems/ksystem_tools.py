"""Intersection graphs and exact maximum k-system search within a finite universe."""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .lattice_curves import intersection_number


@dataclass
class IntersectionGraph:
    vertices: list
    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=np.int64)
        if w.shape != (len(self.vertices),) * 2:
            raise ValueError("weight table shape does not match vertices")
        if not np.array_equal(w, w.T) or np.any(np.diag(w) != 0):
            raise ValueError("weights must be symmetric with zero diagonal")
        self.weights = w

    @property
    def degrees(self) -> np.ndarray:
        return (self.weights >= 1).sum(axis=1)

    @property
    def average_degree(self) -> float:
        return float(self.degrees.mean()) if self.vertices else 0.0

    @property
    def total_intersection(self) -> int:
        """Crossings of the union: each unordered pair counted once."""
        return int(np.triu(self.weights, 1).sum())

    @property
    def edges(self) -> list:
        n = len(self.vertices)
        return [(i, j) for i in range(n) for j in range(i + 1, n) if self.weights[i, j] >= 1]


def build_graph(curves: Sequence, intersect: Callable = intersection_number) -> IntersectionGraph:
    n = len(curves)
    w = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(i + 1, n):
            w[i, j] = w[j, i] = intersect(curves[i], curves[j])
    return IntersectionGraph(list(curves), w)


def is_ksystem(curves, k: int, intersect: Callable = intersection_number) -> bool:
    return all(intersect(a, b) <= k for i, a in enumerate(curves) for b in curves[i + 1:])


# --------------------------------------------------------------- max clique

def _color_bound(cand: list, adj: list):
    """Greedy sequential coloring; returns vertices ordered by color with color numbers."""
    order, colors = [], []
    remaining = list(cand)
    color = 0
    while remaining:
        color += 1
        klass: list = []
        rest = []
        for v in remaining:
            if all(u not in adj[v] for u in klass):
                klass.append(v)
            else:
                rest.append(v)
        order.extend(klass)
        colors.extend([color] * len(klass))
        remaining = rest
    return order, colors


def _max_clique_size(cand: list, adj: list, floor: int = 0) -> int:
    """Size of a maximum clique within cand (branch and bound, coloring bound)."""
    best = [floor]

    def expand(size, cand):
        order, colors = _color_bound(cand, adj)
        for idx in range(len(order) - 1, -1, -1):
            if size + colors[idx] <= best[0]:
                return
            v = order[idx]
            new = [u for u in order[:idx] if u in adj[v]]
            if new:
                expand(size + 1, new)
            elif size + 1 > best[0]:
                best[0] = size + 1

    if cand:
        expand(0, list(cand))
    return best[0]


@dataclass
class KSystemResult:
    size: int
    witness: list
    k: int
    box: Optional[int] = None
    elapsed_ms: int = 0

    def to_dict(self) -> dict:
        return {"size": self.size, "witness": [list(c) for c in self.witness], "k": self.k,
                "box": self.box, "elapsed_ms": self.elapsed_ms}


def max_ksystem(universe: Sequence, k: int, intersect: Callable = intersection_number,
                box: Optional[int] = None, threads: int = 1) -> KSystemResult:
    """Largest subset with pairwise intersection <= k; lexicographically least witness."""
    if k < 0:
        raise ValueError("k must be >= 0")
    t0 = time.perf_counter()
    curves = sorted(universe)
    n = len(curves)
    if n == 0:
        return KSystemResult(0, [], k, box, 0)
    adj = [set() for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if intersect(curves[i], curves[j]) <= k:
                adj[i].add(j)
                adj[j].add(i)

    def rooted(v):
        # largest clique whose least vertex is v
        later = [u for u in adj[v] if u > v]
        return 1 + _max_clique_size(later, adj)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            sizes = list(ex.map(rooted, range(n)))
    else:
        sizes = [rooted(v) for v in range(n)]
    omega = max(sizes)

    chosen: list = []
    common = set(range(n))
    for v in range(n):
        if v not in common:
            continue
        nxt = {u for u in common if u in adj[v] and u > v}
        if 1 + _max_clique_size(sorted(nxt), adj) >= omega - len(chosen):
            chosen.append(v)
            common = nxt
            if len(chosen) == omega:
                break
    elapsed = int((time.perf_counter() - t0) * 1000)
    return KSystemResult(omega, [curves[i] for i in chosen], k, box, elapsed)


# --------------------------------------------------------- diagnostics

def turan_bound(t: float, D: float) -> float:
    if t < 1 or D < 0:
        raise ValueError("need t >= 1 and D >= 0")
    return 1.5 * t * (D + 1)


def chebyshev_pipeline(N: int, t: int, k: int, C: float) -> dict:
    """Diagnostic for the length-budget contradiction: is N <= e^{C sqrt(t^{3k}/N)} t?"""
    from .census import census_count_bound

    if N < 1 or t < 1 or k < 1 or C <= 0:
        raise ValueError("need N, t, k >= 1 and C > 0")
    L = C * math.sqrt(t ** (3 * k) / N)
    rhs_exp = L + math.log(t)
    consistent = math.log(N) <= rhs_exp
    return {"N": N, "t": t, "k": k, "C": C, "L": L,
            "census_budget_2L": 2 * census_count_bound(2 * L, t),
            "log_N": math.log(N), "log_rhs": rhs_exp, "consistent": consistent}


def degree_check(graph: IntersectionGraph, t: int, k: int, C: float = 1.0) -> dict:
    bound = C * t ** (3 * k - 1)
    if not graph.vertices:
        return {"max_degree": 0, "mean_degree": 0.0, "argmax": None, "bound": bound,
                "C": C, "pass": True}
    deg = graph.degrees
    i = int(np.argmax(deg))
    return {"max_degree": int(deg[i]), "mean_degree": float(deg.mean()),
            "argmax": list(graph.vertices[i]), "bound": bound, "C": C,
            "pass": bool(deg[i] <= bound)}
