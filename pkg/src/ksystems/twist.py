"""Pinched four-holed spheres and one-holed tori with twist families.

The seed curve crosses the pinched cuff alpha twice (four-holed sphere) or
once (one-holed torus). Zero twist is the twist minimizing the seed's
length; there the seed meets alpha orthogonally.
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import minimize_scalar

from .fuchsian import (HyperbolicStructure, four_holed_sphere, one_holed_torus, word_inverse)

MAX_PINCH = 0.1
KINDS = ("four-holed", "one-holed-torus")


@dataclass
class TwistFamily:
    kind: str
    r: float
    tau0: float
    base: HyperbolicStructure
    alpha: tuple
    beta: tuple

    @property
    def crossings(self) -> int:
        return 2 if self.kind == "four-holed" else 1

    @property
    def log_coef(self) -> int:
        """Coefficient of log(1/r) in the length bound: 2 per crossing."""
        return 2 * self.crossings

    @property
    def step(self) -> float:
        # half twists on the sphere, full twists on the torus
        return self.r / 2 if self.kind == "four-holed" else self.r

    def structure(self, n: int) -> HyperbolicStructure:
        return _build(self.kind, self.r, self.tau0 + n * self.step)

    def length(self, n: int) -> float:
        return self.structure(n).length(self.beta)

    def full_twist_word(self, m: int) -> tuple:
        """Word for the seed after m full twists, evaluated in the base structure."""
        a = self.alpha if m < 0 else word_inverse(self.alpha)
        k = abs(m)
        if self.kind == "one-holed-torus":
            return self.beta + a * k
        return (self.beta[0],) + a * k + self.beta[1:] + word_inverse(a) * k

    def residual(self, n: int, length: float) -> float:
        return length - n * self.r - self.log_coef * math.log(1 / self.r)


def _build(kind: str, r: float, twist: float) -> HyperbolicStructure:
    if kind == "four-holed":
        return four_holed_sphere(r, twist)
    if kind == "one-holed-torus":
        return one_holed_torus(r, twist)
    raise ValueError(f"unknown family {kind!r}")


def _seed(kind: str):
    # alpha and beta as words in the glued structure's generators
    if kind == "four-holed":
        return (-2, -1), (2, 3)
    return (1,), (2,)


def _family(kind: str, r: float) -> TwistFamily:
    if r <= 0:
        raise ValueError("r must be positive")
    alpha, beta = _seed(kind)
    res = minimize_scalar(lambda t: _build(kind, r, t).length(beta), bounds=(-2 * r, 2 * r),
                          method="bounded", options={"xatol": 1e-12})
    tau0 = float(res.x)
    return TwistFamily(kind, r, tau0, _build(kind, r, tau0), alpha, beta)


def build_pinched(kind: str, r: float) -> TwistFamily:
    if not 0 < r < MAX_PINCH:
        raise ValueError(f"r must lie in (0, {MAX_PINCH}) to count as pinched")
    return _family(kind, r)


def family_lengths(tf: TwistFamily, n_max: int, threads: int = 1) -> list:
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    ns = list(range(n_max + 1))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            ls = list(ex.map(tf.length, ns))
    else:
        ls = [tf.length(n) for n in ns]
    return list(zip(ns, ls))


def fit_c0(families_lengths) -> float:
    """Max residual over (family, [(n, length), ...]) pairs."""
    return max(tf.residual(n, l) for tf, rows in families_lengths for n, l in rows)


@dataclass
class BoundCheck:
    c0: float
    min_residual: float
    max_residual: float
    violations: list

    @property
    def passed(self) -> bool:
        return not self.violations


def check_length_bound(tf: TwistFamily, rows, c0: float, tol: float = 1e-9) -> BoundCheck:
    res = [(n, tf.residual(n, l)) for n, l in rows]
    bad = [(n, v) for n, v in res if v > c0 + tol]
    return BoundCheck(c0, min(v for _, v in res), max(v for _, v in res), bad)


def lengths_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "length"])
    for n, l in rows:
        w.writerow([n, f"{l:.12f}"])
    return buf.getvalue()


@dataclass
class GrowthFit:
    kind: str
    slope: float
    intercept: float
    c: float
    points: list  # (L, r, count)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "slope": self.slope, "intercept": self.intercept,
                "c": self.c, "points": [list(p) for p in self.points]}


def count_below(tf: TwistFamily, L: float, cap: int = 100_000) -> int:
    """Number of n >= 0 with length(beta_n) <= L (lengths increase in n)."""
    n = 0
    while n < cap and tf.length(n) <= L:
        n += 1
    return n


def calibrate_c0(kind: str, r: float = 0.05, n_max: int = 20) -> float:
    tf = _family(kind, r)
    return fit_c0([(tf, family_lengths(tf, n_max))])


def growth_fit(kind: str, L_values, c: Optional[float] = None, threads: int = 1) -> GrowthFit:
    """Slope of log #{n : l(beta_n) <= L} against L with r = exp(-L/k + c).

    k is the log coefficient of the family (4 or 2). The default c sits a
    quarter unit above C0/k so that every L in range admits some twists.
    """
    Ls = sorted(float(x) for x in L_values)
    if len(Ls) < 5:
        raise ValueError("need at least 5 L values to fit")
    if Ls[-1] - Ls[0] < 3:
        raise ValueError("L range must span at least 3 units")
    k = 4 if kind == "four-holed" else 2
    if c is None:
        c = calibrate_c0(kind) / k + 0.25

    def one(L):
        r = math.exp(-L / k + c)
        return (L, r, count_below(_family(kind, r), L))

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            pts = list(ex.map(one, Ls))
    else:
        pts = [one(L) for L in Ls]
    if any(p[2] == 0 for p in pts):
        raise ValueError("some L admits no family member; raise c")
    slope, intercept = np.polyfit([p[0] for p in pts], [math.log(p[2]) for p in pts], 1)
    return GrowthFit(kind, float(slope), float(intercept), c, pts)
