"""Simple closed curves on the torus as primitive integer vectors.

The same model serves T^2 and the once-punctured torus: geometric
intersection of two simple closed curves there is |ps - qr|.
"""

from __future__ import annotations

import csv
import io
from math import gcd
from typing import NamedTuple


class LatticeCurve(NamedTuple):
    p: int
    q: int

    def __str__(self):
        return f"({self.p},{self.q})"


def canonicalize(p: int, q: int) -> LatticeCurve:
    if p == 0 and q == 0:
        raise ValueError("zero vector is not a curve")
    d = gcd(abs(p), abs(q))
    p, q = p // d, q // d
    if p < 0 or (p == 0 and q < 0):
        p, q = -p, -q
    return LatticeCurve(p, q)


def is_canonical(c) -> bool:
    p, q = c
    return (p, q) != (0, 0) and gcd(abs(p), abs(q)) == 1 and (p > 0 or (p == 0 and q == 1))


def intersection_number(a, b) -> int:
    return abs(a[0] * b[1] - a[1] * b[0])


def enumerate_curves(box: int) -> list[LatticeCurve]:
    """All canonical primitive curves with max(|p|, |q|) <= box, sorted by (p, q)."""
    if box < 1:
        raise ValueError("box must be >= 1")
    out = []
    for p in range(0, box + 1):
        for q in range(-box, box + 1):
            if (p, q) == (0, 0) or gcd(p, abs(q)) != 1:
                continue
            if p == 0 and q != 1:
                continue
            out.append(LatticeCurve(p, q))
    out.sort()
    return out


def to_csv(curves) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["p", "q"])
    for c in curves:
        w.writerow([c[0], c[1]])
    return buf.getvalue()


def from_csv(text: str) -> list[LatticeCurve]:
    rows = csv.DictReader(io.StringIO(text))
    return [canonicalize(int(r["p"]), int(r["q"])) for r in rows]
