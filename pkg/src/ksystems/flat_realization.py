"""Exact polygonal curves and arcs on the flat torus R^2 / Z^2.

A curve is stored by one period of its lift to the plane: vertices
``V_0 .. V_{m-1}`` and an integer translation ``h`` so that the lift
continues with ``V_{i + m} = V_i + h``. An arc stores ``V_0 .. V_m``
explicitly; its endpoints sit on marked punctures.

All coordinates are :class:`fractions.Fraction`, so crossing counts are
exact. Bigon reduction is combinatorial: an innermost bigon is a pair of
crossings adjacent along both curves whose connecting loop is
null-homotopic in the punctured torus. Since removing a bigon is a
homotopy rel endpoints of the remaining sub-arcs, the loop test can always
be run on the original polylines; winding numbers around the lifted
punctures decide it because the loop after the earlier removals is simple.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor
from typing import NamedTuple, Optional, Sequence

from .lattice_curves import LatticeCurve, canonicalize
from .surface_core import SurfaceSig

Point = tuple  # (Fraction, Fraction)

CLOSED = "closed"
ARC = "arc"


class NonTransverseError(ValueError):
    """Two polylines touch at a vertex, overlap, or pass through a puncture."""


def F(x) -> Fraction:
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def pt(x, y) -> Point:
    return (F(x), F(y))


def _sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def _add(a, b):
    return (a[0] + b[0], a[1] + b[1])


def _cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def _orient(a, b, c):
    return _cross(_sub(b, a), _sub(c, a))


def _frac_part(p):
    return (p[0] - floor(p[0]), p[1] - floor(p[1]))


@dataclass(frozen=True)
class FlatCurve:
    vertices: tuple
    kind: str = CLOSED
    translation: tuple = (0, 0)

    def __post_init__(self):
        verts = tuple(pt(*v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        if self.kind == CLOSED:
            h = (int(self.translation[0]), int(self.translation[1]))
            object.__setattr__(self, "translation", h)
            if not verts:
                raise ValueError("closed curve needs a vertex")
            if len(verts) == 1 and h == (0, 0):
                raise ValueError("degenerate closed curve")
        elif self.kind == ARC:
            if len(verts) < 2:
                raise ValueError("arc needs two vertices")
            d = _sub(verts[-1], verts[0])
            object.__setattr__(self, "translation", (d[0], d[1]))
        else:
            raise ValueError(f"unknown kind {self.kind!r}")
        for i in range(self.nseg):
            a, b = self.segment(i)
            if a == b:
                raise ValueError("degenerate segment")

    @property
    def closed(self) -> bool:
        return self.kind == CLOSED

    @property
    def nseg(self) -> int:
        return len(self.vertices) if self.closed else len(self.vertices) - 1

    def vertex(self, k: int) -> Point:
        if not self.closed:
            return self.vertices[k]
        m = len(self.vertices)
        w, r = divmod(k, m)
        v = self.vertices[r]
        h = self.translation
        return (v[0] + w * h[0], v[1] + w * h[1])

    def segment(self, i: int):
        return self.vertex(i), self.vertex(i + 1)

    def point_at(self, u: Fraction) -> Point:
        i = floor(u)
        t = u - i
        if not self.closed and i == self.nseg:
            return self.vertices[-1]
        a, b = self.segment(i)
        return (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))

    def path(self, u0: Fraction, u1: Fraction) -> list:
        """Lifted polyline from parameter ``u0`` to ``u1`` (either direction)."""
        if u1 >= u0:
            pts = [self.point_at(u0)]
            k = floor(u0) + 1
            while k < u1:
                pts.append(self.vertex(k))
                k += 1
            pts.append(self.point_at(u1))
            return pts
        return list(reversed(self.path(u1, u0)))

    @property
    def homology(self) -> tuple:
        return self.translation if self.closed else None

    def lattice_class(self) -> Optional[LatticeCurve]:
        h = self.translation
        if not self.closed or h == (0, 0):
            return None
        return canonicalize(*h)

    def translated(self, v) -> "FlatCurve":
        verts = tuple(_add(p, v) for p in self.vertices)
        return FlatCurve(verts, self.kind, self.translation if self.closed else (0, 0))

    def reversed(self) -> "FlatCurve":
        if self.closed:
            m = len(self.vertices)
            verts = tuple(self.vertex(m - k) for k in range(m))
            return FlatCurve(verts, CLOSED, (-self.translation[0], -self.translation[1]))
        return FlatCurve(tuple(reversed(self.vertices)), ARC)

    def bbox(self):
        xs = [v[0] for v in self._period_points()]
        ys = [v[1] for v in self._period_points()]
        return min(xs), max(xs), min(ys), max(ys)

    def _period_points(self):
        return [self.vertex(k) for k in range(self.nseg + 1)]

    # JSON: vertices reduced to [0,1)^2 as "num/den" strings plus per-edge jumps
    def to_json(self) -> dict:
        pts = self._period_points()
        base = [(floor(p[0]), floor(p[1])) for p in pts]
        verts = [[str(v[0]), str(v[1])] for v in (_frac_part(p) for p in pts[: self.nseg + (0 if self.closed else 1)])]
        jumps = [[base[i + 1][0] - base[i][0], base[i + 1][1] - base[i][1]]
                 for i in range(self.nseg)]
        return {"kind": self.kind, "vertices": verts, "jumps": jumps}

    @classmethod
    def from_json(cls, data: dict) -> "FlatCurve":
        kind = data.get("kind", CLOSED)
        raw = [pt(*v) for v in data["vertices"]]
        jumps = data.get("jumps") or [[0, 0]] * (len(raw) if kind == CLOSED else len(raw) - 1)
        nseg = len(raw) if kind == CLOSED else len(raw) - 1
        if len(jumps) != nseg:
            raise ValueError("need one jump vector per edge")
        lifted = [raw[0]]
        off = (0, 0)
        for i in range(1, len(raw)):
            off = (off[0] + jumps[i - 1][0], off[1] + jumps[i - 1][1])
            lifted.append(_add(raw[i], off))
        if kind == CLOSED:
            off = (off[0] + jumps[-1][0], off[1] + jumps[-1][1])
            h = (int(off[0]), int(off[1]))
            return cls(tuple(lifted), CLOSED, h)
        return cls(tuple(lifted), ARC)


@dataclass(frozen=True)
class MarkedSurface:
    """Flat torus with marked punctures (points of [0,1)^2)."""

    punctures: tuple = ()

    def __post_init__(self):
        pts = tuple(_frac_part(pt(*p)) for p in self.punctures)
        if len(set(pts)) != len(pts):
            raise ValueError("puncture points must be distinct")
        object.__setattr__(self, "punctures", pts)

    @property
    def signature(self) -> SurfaceSig:
        return SurfaceSig(1, len(self.punctures))

    def without(self, p) -> "MarkedSurface":
        p = _frac_part(pt(*p))
        return MarkedSurface(tuple(q for q in self.punctures if q != p))

    def is_puncture(self, p) -> bool:
        return _frac_part(p) in self.punctures

    def lifts_in(self, xmin, xmax, ymin, ymax):
        for z in self.punctures:
            for i in range(ceil(xmin - z[0]), floor(xmax - z[0]) + 1):
                for j in range(ceil(ymin - z[1]), floor(ymax - z[1]) + 1):
                    yield (z[0] + i, z[1] + j)

    def to_json(self):
        return {"genus": 1, "punctures": [[str(z[0]), str(z[1])] for z in self.punctures]}

    @classmethod
    def from_json(cls, data):
        return cls(tuple(pt(*z) for z in data.get("punctures", [])))


TORUS = MarkedSurface(())


def puncture_at(m: MarkedSurface, x) -> MarkedSurface:
    x = _frac_part(pt(*x))
    if x in m.punctures:
        raise ValueError(f"point {x} is already a puncture")
    return MarkedSurface(m.punctures + (x,))


def line_curve(c, offset=Fraction(0)) -> FlatCurve:
    """Straight closed representative of class ``c`` through (offset, 0)."""
    offset = F(offset)
    if not (0 <= offset < 1):
        raise ValueError("offset must lie in [0, 1)")
    c = canonicalize(*c)
    return FlatCurve(((offset, Fraction(0)),), CLOSED, (c.p, c.q))


# ---------------------------------------------------------------- crossings

class Crossing(NamedTuple):
    ua: Fraction   # parameter on a (segment index + t)
    ub: Fraction   # parameter on b
    tau: tuple     # a.point_at(ua) == b.point_at(ub) + tau
    point: Point   # the point on a's lift


def _seg_hit(p, q, r, s):
    """Intersection parameters of segments pq and rs, or None.

    Returns ``(sp, tr)`` with ``sp`` along pq and ``tr`` along rs, or the
    string ``"overlap"`` for collinear overlap.
    """
    d1 = _sub(q, p)
    d2 = _sub(s, r)
    den = _cross(d1, d2)
    rp = _sub(r, p)
    if den == 0:
        if _cross(rp, d1) != 0:
            return None
        # collinear: project onto d1
        dd = d1[0] * d1[0] + d1[1] * d1[1]
        t0 = (rp[0] * d1[0] + rp[1] * d1[1]) / dd
        sr = _sub(s, p)
        t1 = (sr[0] * d1[0] + sr[1] * d1[1]) / dd
        lo, hi = min(t0, t1), max(t0, t1)
        if hi < 0 or lo > 1:
            return None
        if hi == 0 or lo == 1:
            # touching at one endpoint only
            sp = Fraction(0) if hi == 0 else Fraction(1)
            tr = Fraction(0) if (t0 == sp) else Fraction(1)
            return sp, tr
        return "overlap"
    sp = _cross(rp, d2) / den
    tr = _cross(rp, d1) / den
    if 0 <= sp <= 1 and 0 <= tr <= 1:
        return sp, tr
    return None


def _tau_range(abox, bbox):
    ax0, ax1, ay0, ay1 = abox
    bx0, bx1, by0, by1 = bbox
    return (range(ceil(ax0 - bx1), floor(ax1 - bx0) + 1),
            range(ceil(ay0 - by1), floor(ay1 - by0) + 1))


def _segbox(a, b):
    return min(a[0], b[0]), max(a[0], b[0]), min(a[1], b[1]), max(a[1], b[1])


def _vertex_id(curve: FlatCurve, i: int, s: Fraction):
    """Identity of the vertex hit at parameter s on segment i (None if interior)."""
    if 0 < s < 1:
        return None
    k = i + int(s)
    if not curve.closed and (k == 0 or k == curve.nseg):
        return "end"
    if curve.closed:
        return k % curve.nseg
    return k


def find_crossings(a: FlatCurve, b: FlatCurve, self_mode: bool = False) -> list:
    """All transverse crossings of a and b on the torus.

    Arc endpoints meeting at a shared puncture are not crossings. Any other
    contact at a vertex, or a collinear overlap, raises NonTransverseError.
    """
    out = []
    segs_b = [b.segment(j) for j in range(b.nseg)]
    boxes_b = [_segbox(*s) for s in segs_b]
    for i in range(a.nseg):
        p, q = a.segment(i)
        abox = _segbox(p, q)
        for j, (r, s) in enumerate(segs_b):
            xr, yr = _tau_range(abox, boxes_b[j])
            for tx in xr:
                for ty in yr:
                    if self_mode and i == j and tx == 0 and ty == 0:
                        continue
                    hit = _seg_hit(p, q, (r[0] + tx, r[1] + ty), (s[0] + tx, s[1] + ty))
                    if hit is None:
                        continue
                    if hit == "overlap":
                        raise NonTransverseError(f"collinear overlap on segments {i},{j}")
                    sp, tr = hit
                    va = _vertex_id(a, i, sp)
                    vb = _vertex_id(b, j, tr)
                    if va is None and vb is None:
                        pnt = (p[0] + sp * (q[0] - p[0]), p[1] + sp * (q[1] - p[1]))
                        out.append(Crossing(i + sp, j + tr, (tx, ty), pnt))
                        continue
                    if va == "end" and vb == "end":
                        continue
                    if self_mode and va is not None and va == vb:
                        continue
                    raise NonTransverseError(
                        f"contact at a vertex (segments {i},{j}, translate {(tx, ty)})")
    return out


def self_crossings(a: FlatCurve) -> int:
    """Number of self-intersection points of a (0 means simple)."""
    return len(find_crossings(a, a, self_mode=True)) // 2


def is_simple(a: FlatCurve) -> bool:
    try:
        return self_crossings(a) == 0
    except NonTransverseError:
        return False


def _dist2_point_segment(z, a, b):
    d = _sub(b, a)
    dd = d[0] * d[0] + d[1] * d[1]
    t = ((z[0] - a[0]) * d[0] + (z[1] - a[1]) * d[1]) / dd
    t = min(max(t, Fraction(0)), Fraction(1))
    c = (a[0] + t * d[0], a[1] + t * d[1])
    e = _sub(z, c)
    return e[0] * e[0] + e[1] * e[1]


def _clearance2(curve: FlatCurve, marked: MarkedSurface):
    best = None
    for i in range(curve.nseg):
        a, b = curve.segment(i)
        x0, x1, y0, y1 = _segbox(a, b)
        for z in marked.lifts_in(x0 - 1, x1 + 1, y0 - 1, y1 + 1):
            d = _dist2_point_segment(z, a, b)
            if best is None or d < best:
                best = d
    return best


NUDGE_DIRECTIONS = ((Fraction(1), Fraction(2, 7)), (Fraction(-3, 11), Fraction(1)),
                    (Fraction(5, 13), Fraction(-1)), (Fraction(-1), Fraction(-4, 9)))


def nudge(curve: FlatCurve, marked: MarkedSurface = TORUS, attempt: int = 0) -> FlatCurve:
    """Deterministic tiny translation of a closed curve.

    The shift is shorter than the curve's distance to every puncture, so the
    straight-line homotopy stays inside the punctured torus.
    """
    if not curve.closed:
        raise NonTransverseError("arcs are pinned at punctures and cannot be nudged")
    d = NUDGE_DIRECTIONS[attempt % len(NUDGE_DIRECTIONS)]
    scale = Fraction(1, 7919 * (attempt + 1))
    clear = _clearance2(curve, marked)
    if clear is not None:
        if clear == 0:
            raise NonTransverseError("curve passes through a puncture")
        while (scale * d[0]) ** 2 + (scale * d[1]) ** 2 >= clear / 4:
            scale /= 2
    return curve.translated((scale * d[0], scale * d[1]))


def _with_general_position(fn, a, b, marked, max_attempts=8):
    err = None
    for attempt in range(max_attempts):
        try:
            return fn(a, b), b
        except NonTransverseError as exc:
            err = exc
            if not b.closed:
                if a.closed:
                    a = nudge(a, marked, attempt)
                    continue
                raise
            b = nudge(b, marked, attempt)
    raise NonTransverseError(f"perturbation failed: {err}")


def raw_crossings(a: FlatCurve, b: FlatCurve) -> int:
    n, _ = _with_general_position(lambda x, y: len(find_crossings(x, y)), a, b, TORUS)
    return n


# ------------------------------------------------------------ bigon removal

def winding_number(loop: Sequence[Point], z: Point) -> int:
    """Winding number of a closed polygon around z (z must not lie on it)."""
    w = 0
    n = len(loop)
    for k in range(n):
        p = loop[k]
        q = loop[(k + 1) % n]
        o = _orient(p, q, z)
        if o == 0 and min(p[0], q[0]) <= z[0] <= max(p[0], q[0]) \
                and min(p[1], q[1]) <= z[1] <= max(p[1], q[1]):
            raise NonTransverseError("loop passes through a puncture")
        if p[1] <= z[1]:
            if q[1] > z[1] and o > 0:
                w += 1
        elif q[1] <= z[1] and o < 0:
            w -= 1
    return w


def _loop_is_empty_disc(loop, marked: MarkedSurface, base: Optional[Point] = None) -> bool:
    if loop[0] != loop[-1]:
        return False
    poly = loop[:-1]
    if len(poly) < 3:
        return True
    xs = [p[0] for p in poly]
    ys = [p[1] for p in poly]
    for z in marked.lifts_in(min(xs), max(xs), min(ys), max(ys)):
        if base is not None and z == base:
            continue
        if winding_number(poly, z) != 0:
            return False
    return True


@dataclass
class BigonResult:
    count: int
    initial: int
    removed: list = field(default_factory=list)
    crossings: list = field(default_factory=list)
    a: Optional[FlatCurve] = None
    b: Optional[FlatCurve] = None

    def __iter__(self):
        # (a, b, count) unpacking, mirroring the operation's contract
        return iter((self.a, self.b, self.count))


def _neighbors(sorted_idx, closed):
    """Pairs (x, y) adjacent going forward along a curve."""
    n = len(sorted_idx)
    if n < 2:
        return []
    pairs = [(sorted_idx[i], sorted_idx[i + 1]) for i in range(n - 1)]
    if closed:
        pairs.append((sorted_idx[-1], sorted_idx[0]))
    return pairs


def _candidates(a, b, cr, alive, marked):
    """Yield removable configurations: ('bigon', x, y) or ('half', x)."""
    order_a = sorted(alive, key=lambda k: cr[k].ua)
    order_b = sorted(alive, key=lambda k: cr[k].ub)
    pos_b = {k: i for i, k in enumerate(order_b)}
    nb = len(order_b)

    def b_adjacent(x, y):
        # directions along b from y to x that meet no other crossing
        dirs = []
        ix, iy = pos_b[x], pos_b[y]
        if b.closed:
            if (iy + 1) % nb == ix:
                dirs.append(+1)
            if (ix + 1) % nb == iy:
                dirs.append(-1)
        else:
            if iy + 1 == ix:
                dirs.append(+1)
            if ix + 1 == iy:
                dirs.append(-1)
        return dirs

    for x, y in _neighbors(order_a, a.closed):
        X, Y = cr[x], cr[y]
        ua0, ua1 = X.ua, Y.ua
        wrap = 0
        if ua1 <= ua0:
            ua1 += a.nseg
            wrap = 1
        apath = a.path(ua0, ua1)
        shift = (Y.tau[0] + wrap * a.translation[0], Y.tau[1] + wrap * a.translation[1])
        for d in b_adjacent(x, y):
            ub0, ub1 = Y.ub, X.ub
            if d > 0 and ub1 <= ub0:
                ub1 += b.nseg
            if d < 0 and ub1 >= ub0:
                ub1 -= b.nseg
            bpath = [_add(p, shift) for p in b.path(ub0, ub1)]
            loop = apath + bpath[1:]
            if _loop_is_empty_disc(loop, marked):
                yield ("bigon", x, y)

    if a.closed or b.closed or not order_a:
        return
    # half-bigons with a corner at a shared puncture
    ends_a = [(Fraction(0), order_a[0]), (Fraction(a.nseg), order_a[-1])]
    ends_b = [(Fraction(0), order_b[0]), (Fraction(b.nseg), order_b[-1])]
    for ea, x in ends_a:
        X = cr[x]
        apath = a.path(ea, X.ua)
        for eb, xb in ends_b:
            if xb != x:
                continue
            bpath = [_add(p, X.tau) for p in b.path(X.ub, eb)]
            loop = apath + bpath[1:]
            if _loop_is_empty_disc(loop, marked, base=apath[0]):
                yield ("half", x)


def bigon_reduce(a: FlatCurve, b: FlatCurve, marked: MarkedSurface = TORUS,
                 rng: Optional[random.Random] = None) -> BigonResult:
    """Remove innermost puncture-free bigons until none is left.

    The final count is the geometric intersection number of a and b rel the
    punctures of ``marked``. With ``rng`` the bigon removed at each step is
    picked at random among all available ones.
    """
    for p in (a.vertices[0], a.vertices[-1]) if not a.closed else ():
        if not marked.is_puncture(p):
            raise ValueError("arc endpoints must be marked punctures")
    for p in (b.vertices[0], b.vertices[-1]) if not b.closed else ():
        if not marked.is_puncture(p):
            raise ValueError("arc endpoints must be marked punctures")

    def crossings(x, y):
        return find_crossings(x, y)

    cr = None
    for attempt in range(8):
        try:
            cr = crossings(a, b)
            break
        except NonTransverseError:
            if b.closed:
                b = nudge(b, marked, attempt)
            elif a.closed:
                a = nudge(a, marked, attempt)
            else:
                raise
    if cr is None:
        raise NonTransverseError("could not reach general position")

    alive = set(range(len(cr)))
    initial = len(cr)
    removed = []
    cap = initial
    while alive:
        cands = _candidates(a, b, cr, alive, marked)
        if rng is None:
            choice = next(cands, None)
        else:
            pool = list(cands)
            choice = rng.choice(pool) if pool else None
        if choice is None:
            break
        if len(removed) >= cap:
            raise RuntimeError("bigon reduction exceeded its iteration cap")
        for k in choice[1:]:
            alive.discard(k)
        removed.append(choice)
    survivors = [cr[k] for k in sorted(alive, key=lambda k: cr[k].ua)]
    return BigonResult(len(alive), initial, removed, survivors, a, b)


def has_bigon(a: FlatCurve, b: FlatCurve, marked: MarkedSurface = TORUS) -> bool:
    cr = find_crossings(a, b)
    return next(_candidates(a, b, cr, set(range(len(cr))), marked), None) is not None


def intersection_rel(a: FlatCurve, b: FlatCurve, marked: MarkedSurface = TORUS) -> int:
    return bigon_reduce(a, b, marked).count


# ----------------------------------------------------------------- wiggles

def wiggle(c, offset, zigzags: Sequence[tuple], drift=Fraction(1, 64)) -> FlatCurve:
    """Homotope of ``line_curve(c, offset)`` with backtracking zigzags.

    ``zigzags`` is a list of ``(u_forward, u_back)`` pairs of line
    parameters in (0, 1): the curve runs forward to ``u_forward``, turns back
    to ``u_back``, then continues. Lateral drift is monotone, which keeps the
    curve simple as long as all turning points precede the final run.
    """
    c = canonicalize(*c)
    offset = F(offset)
    h = (c.p, c.q)
    nn = c.p * c.p + c.q * c.q
    nu = (Fraction(-c.q, nn), Fraction(c.p, nn))
    base = (offset, Fraction(0))

    def at(u, w):
        return (base[0] + u * h[0] + w * nu[0], base[1] + u * h[1] + w * nu[1])

    verts = [base]
    w = Fraction(0)
    umax = Fraction(0)
    for uf, ub in zigzags:
        uf, ub = F(uf), F(ub)
        if not (0 < ub < uf < 1):
            raise ValueError("zigzag parameters must satisfy 0 < back < forward < 1")
        w += drift
        verts.append(at(uf, w))
        w += drift
        verts.append(at(ub, w))
        umax = max(umax, uf)
    # final run starts beyond every turning point so the return leg is clear
    uend = (umax + 1) / 2
    w += drift
    verts.append(at(uend, w))
    if w * 2 >= 1:
        raise ValueError("lateral drift too large")
    return FlatCurve(tuple(verts), CLOSED, h)


def random_wiggle(c, rng: random.Random, max_zigzags: int = 3) -> FlatCurve:
    """Random simple homotope of a straight representative of c."""
    for _ in range(100):
        offset = Fraction(rng.randrange(1, 997), 997)
        nz = rng.randint(1, max_zigzags)
        zz = []
        lo = Fraction(rng.randrange(1, 50), 1000)
        for _ in range(nz):
            uf = lo + Fraction(rng.randrange(50, 250), 1000)
            ub = lo + Fraction(rng.randrange(1, 49), 1000)
            if uf >= Fraction(9, 10):
                break
            zz.append((uf, ub))
            lo = uf + Fraction(rng.randrange(1, 30), 1000)
        if not zz:
            continue
        drift = Fraction(1, rng.choice([16, 24, 32, 48])) / max(1, len(zz))
        curve = wiggle(c, offset, zz, drift)
        if is_simple(curve):
            return curve
    raise RuntimeError("could not draw a simple wiggle")


# ------------------------------------------------------- free homotopy keys

_BASES = (((1, 0), (0, 1)), ((1, 1), (0, 1)), ((1, 0), (1, 1)), ((1, -1), (0, 1)),
          ((1, 0), (1, -1)), ((2, 1), (1, 1)), ((1, 2), (1, 1)), ((2, -1), (1, 0)),
          ((1, 2), (0, 1)), ((3, 1), (1, 0)), ((1, 3), (0, 1)), ((3, 2), (1, 1)))


def _on_open_segment(z, a, b):
    if _orient(a, b, z) != 0 or z == a or z == b:
        return False
    return min(a[0], b[0]) <= z[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= z[1] <= max(a[1], b[1])


@dataclass(frozen=True)
class CutSystem:
    """Arcs between punctures cutting the punctured torus into a disc.

    Because every vertex of the cut graph is a puncture there are no
    relations: crossing sequences are words in a free basis of pi_1.
    """

    edges: tuple

    @classmethod
    def build(cls, marked: MarkedSurface) -> "CutSystem":
        zs = marked.punctures
        if not zs:
            raise ValueError("cut system needs at least one puncture")
        z1 = zs[0]
        for w1, w2 in _BASES:
            e1 = (z1, (z1[0] + w1[0], z1[1] + w1[1]))
            e2 = (z1, (z1[0] + w2[0], z1[1] + w2[1]))
            lo_x = min(z1[0], e1[1][0], e2[1][0]) - 1
            hi_x = max(z1[0], e1[1][0], e2[1][0]) + 1
            lo_y = min(z1[1], e1[1][1], e2[1][1]) - 1
            hi_y = max(z1[1], e1[1][1], e2[1][1]) + 1
            lifts = list(marked.lifts_in(lo_x, hi_x, lo_y, hi_y))
            if any(_on_open_segment(z, *e) for z in lifts for e in (e1, e2)):
                continue
            break
        else:
            raise ValueError("no admissible lattice basis for the cut system")
        det = w1[0] * w2[1] - w1[1] * w2[0]
        others = []
        for z in zs[1:]:
            d = _sub(z, z1)
            s = (d[0] * w2[1] - d[1] * w2[0]) / det
            t = (w1[0] * d[1] - w1[1] * d[0]) / det
            s -= floor(s)
            t -= floor(t)
            others.append((z1[0] + s * w1[0] + t * w2[0], z1[1] + s * w1[1] + t * w2[1]))
        others.sort(key=lambda z: ((z[0] - z1[0]) ** 2 + (z[1] - z1[1]) ** 2, z))
        edges = [e1, e2]
        for z in others:
            start = z1
            best = None
            for y in others:
                if y != z and _on_open_segment(y, z1, z):
                    dy = (y[0] - z1[0]) ** 2 + (y[1] - z1[1]) ** 2
                    if best is None or dy > best:
                        best, start = dy, y
            edges.append((start, z))
        return cls(tuple(edges))

    def word(self, path: Sequence[Point]) -> list:
        """Signed edge letters (+-(index+1)) crossed along a lifted polyline."""
        out = []
        boxes = [_segbox(a, b) for a, b in self.edges]
        for k in range(len(path) - 1):
            p, q = path[k], path[k + 1]
            sbox = _segbox(p, q)
            hits = []
            for idx, (a, b) in enumerate(self.edges):
                xr, yr = _tau_range(sbox, boxes[idx])
                for tx in xr:
                    for ty in yr:
                        A = (a[0] + tx, a[1] + ty)
                        B = (b[0] + tx, b[1] + ty)
                        sp = _orient(A, B, p)
                        sq = _orient(A, B, q)
                        if (sp > 0) == (sq > 0):
                            continue
                        mu = sp / (sp - sq)
                        x = (p[0] + mu * (q[0] - p[0]), p[1] + mu * (q[1] - p[1]))
                        d = _sub(B, A)
                        lam = ((x[0] - A[0]) * d[0] + (x[1] - A[1]) * d[1]) / (d[0] * d[0] + d[1] * d[1])
                        if lam <= 0 or lam >= 1:
                            if lam == 0 or lam == 1:
                                raise NonTransverseError("path passes through a puncture")
                            continue
                        hits.append((mu, (idx + 1) if sq > 0 else -(idx + 1)))
            hits.sort()
            out.extend(letter for _, letter in hits)
        return out


def _free_reduce(word):
    st = []
    for x in word:
        if st and st[-1] == -x:
            st.pop()
        else:
            st.append(x)
    return st


def cyclic_reduce(word):
    w = _free_reduce(word)
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    return w[i:j + 1]


def _min_rotation(w):
    if not w:
        return ()
    return min(tuple(w[i:] + w[:i]) for i in range(len(w)))


def homotopy_key(curve: FlatCurve, marked: MarkedSurface = TORUS, cuts: Optional[CutSystem] = None):
    """Canonical key of the unoriented free homotopy class of a closed curve."""
    if not curve.closed:
        raise ValueError("homotopy_key expects a closed curve")
    if not marked.punctures:
        h = curve.translation
        return ("H",) + max(h, (-h[0], -h[1]))
    cuts = cuts or CutSystem.build(marked)
    path = [curve.vertex(k) for k in range(curve.nseg + 1)]
    w = cyclic_reduce(cuts.word(path))
    inv = [-x for x in reversed(w)]
    return ("W",) + min(_min_rotation(w), _min_rotation(inv))


def is_null_homotopic(curve: FlatCurve, marked: MarkedSurface = TORUS) -> bool:
    key = homotopy_key(curve, marked)
    return key == ("H", 0, 0) or key == ("W",)


def enclosed_punctures(curve: FlatCurve, marked: MarkedSurface) -> Optional[list]:
    """For a null-homologous closed curve, the punctures its disc side contains.

    Returns indices into ``marked.punctures`` (one entry per enclosed lift),
    or None when the curve is not null-homologous.
    """
    if not curve.closed or curve.translation != (0, 0):
        return None
    poly = list(curve.vertices)
    xs = [p[0] for p in poly]
    ys = [p[1] for p in poly]
    out = []
    for z in marked.lifts_in(min(xs), max(xs), min(ys), max(ys)):
        if winding_number(poly, z) != 0:
            out.append(marked.punctures.index(_frac_part(z)))
    return sorted(out)
