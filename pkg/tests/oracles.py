"""Independent brute-force oracles shared by the tests."""

import math
from itertools import combinations, product

import networkx as nx
import numpy as np


def brute_force_classes(gens, L, max_len):
    """Primitive conjugacy classes of length <= L among reduced words up to max_len."""
    letters = [(i, s) for i in range(len(gens)) for s in (1, -1)]
    mats = {(i, s): (np.asarray(gens[i]) if s == 1 else np.linalg.inv(gens[i])) for i, s in letters}
    cut = 2 * math.cosh(L / 2) + 1e-9
    found = {}
    for n in range(1, max_len + 1):
        for w in product(letters, repeat=n):
            if any(w[j][0] == w[j + 1][0] and w[j][1] != w[j + 1][1] for j in range(n - 1)):
                continue
            if n > 1 and w[0][0] == w[-1][0] and w[0][1] != w[-1][1]:
                continue
            if any(n % d == 0 and w == w[:d] * (n // d) for d in range(1, n)):
                continue
            m = np.eye(2)
            for x in w:
                m = m @ mats[x]
            t = abs(np.trace(m))
            if t <= 2 + 1e-9 or t > cut:
                continue
            inv = tuple((i, -s) for i, s in reversed(w))
            key = min(v[k:] + v[:k] for v in (w, inv) for k in range(n))
            found[key] = 2 * math.acosh(t / 2)
    return found


def clique_oracle(universe, k, intersect):
    g = nx.Graph()
    g.add_nodes_from(universe)
    g.add_edges_from((a, b) for a, b in combinations(universe, 2) if intersect(a, b) <= k)
    return max(len(c) for c in nx.find_cliques(g))
