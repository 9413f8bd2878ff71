"""Curve-to-arc reductions on the flat torus model.

Sliding: every curve alpha meeting a straight curve gamma becomes an arc
based at a point x of gamma. It runs from x to just past the first crossing
y with alpha, goes once around alpha, and comes back to x on the other side
of gamma.

Projection: filling a puncture p sorts the curves of a system into
inessential, good and bad ones, and each bad or inessential curve yields an
arc based at p.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import floor
from typing import Optional, Sequence

from .flat_realization import (ARC, CLOSED, F, FlatCurve, MarkedSurface, NonTransverseError,
                               _add, _frac_part, _sub, bigon_reduce, enclosed_punctures,
                               find_crossings, has_bigon, homotopy_key, intersection_rel,
                               is_simple, line_curve, pt)
from .lattice_curves import enumerate_curves, intersection_number

# ---------------------------------------------------------------- sliding


@dataclass
class SlideArc:
    source: int              # index of alpha in the input system
    arc: FlatCurve
    y_param: Fraction        # parameter of the first crossing along gamma (from x)
    delta: Fraction


@dataclass
class SlideResult:
    gamma: int
    x: tuple
    orientation: int
    marked: MarkedSurface
    arcs: list = field(default_factory=list)
    crossings_on_gamma: dict = field(default_factory=dict)  # source -> sorted params in (0, 1)


def _gamma_params(gamma: FlatCurve, alpha: FlatCurve, ux: Fraction):
    """Crossings of gamma and alpha as (distance along gamma from x, ub, alpha shift)."""
    out = []
    for c in find_crossings(gamma, alpha):
        ua = c.ua
        shift = c.tau
        if ua <= ux:
            ua += gamma.nseg
            shift = (shift[0] + gamma.translation[0], shift[1] + gamma.translation[1])
        out.append((ua - ux, c.ub, shift))
    out.sort(key=lambda t: t[0])
    return out


def _slide_one(gamma, alpha, ux, X, delta):
    dist, ub, shift = _gamma_params(gamma, alpha, ux)[0]
    seg = [_add(p, shift) for p in alpha.path(ub + delta, ub - delta + alpha.nseg)]
    h = alpha.translation
    verts = [X] + seg + [(X[0] + h[0], X[1] + h[1])]
    return FlatCurve(tuple(verts), ARC), dist


def slide_to_arcs(system: Sequence[FlatCurve], gamma_index: int, x_param, orientation: int = 1,
                  max_halvings: int = 12) -> SlideResult:
    """Slide every curve meeting gamma to an arc based at x = gamma(x_param).

    gamma must be a straight closed curve; the others may be polygonal.
    """
    if orientation not in (1, -1):
        raise ValueError("orientation must be +1 or -1")
    gamma = system[gamma_index]
    if not gamma.closed or gamma.nseg != 1:
        raise ValueError("gamma must be a straight closed curve")
    if orientation == -1:
        gamma = gamma.reversed()
        x_param = 1 - F(x_param)
    ux = F(x_param) % 1
    X = gamma.point_at(ux)
    marked = MarkedSurface((X,))
    res = SlideResult(gamma_index, _frac_part(X), orientation, marked)
    for idx, alpha in enumerate(system):
        if idx == gamma_index:
            continue
        params = _gamma_params(gamma, alpha, ux)
        if not params:
            continue
        if any(d == 0 or d == gamma.nseg for d, _, _ in params):
            raise ValueError("x lies on a crossing")
        res.crossings_on_gamma[idx] = [d for d, _, _ in params]
        ub = params[0][1]
        t = ub - floor(ub)
        delta = min(t, 1 - t) / (4 + len(res.arcs))
        for _ in range(max_halvings):
            try:
                arc, dist = _slide_one(gamma, alpha, ux, X, delta)
                if is_simple(arc):
                    break
            except (NonTransverseError, ValueError):
                pass
            delta /= 2
        else:
            raise NonTransverseError(f"could not make the slid arc of curve {idx} simple")
        res.arcs.append(SlideArc(idx, arc, dist, delta))
    return res


@dataclass
class SlideReport:
    k: int
    bound: int
    pairs: list
    max_count: int
    violations: list
    certificate_failures: list

    @property
    def passed(self) -> bool:
        return not self.violations and not self.certificate_failures

    def to_dict(self) -> dict:
        return {"k": self.k, "bound": self.bound, "max_count": self.max_count,
                "pairs": self.pairs, "violations": self.violations,
                "certificate_failures": self.certificate_failures, "pass": self.passed}


def strand_certificate(res: SlideResult, system, i: int, j: int) -> int:
    """Crossings of each curve with gamma strictly before the other's first crossing,
    counted twice (two strands), plus the curves' own intersection number."""
    ci, cj = res.crossings_on_gamma[i], res.crossings_on_gamma[j]
    yi, yj = ci[0], cj[0]
    before_j = sum(1 for d in ci[1:] if d < yj)
    before_i = sum(1 for d in cj[1:] if d < yi)
    own = bigon_reduce(system[i], system[j]).count
    return 2 * (before_i + before_j) + own


def verify_slide_bound(res: SlideResult, k: int, system: Optional[Sequence[FlatCurve]] = None,
                       rng: Optional[random.Random] = None) -> SlideReport:
    bound = 3 * k - 2
    pairs, bad, cert_bad = [], [], []
    worst = 0
    for a, b in combinations(res.arcs, 2):
        n = bigon_reduce(a.arc, b.arc, res.marked, rng=rng).count
        rec = {"pair": [a.source, b.source], "count": n}
        if system is not None:
            cert = strand_certificate(res, system, a.source, b.source)
            rec["certificate"] = cert
            if n > cert:
                cert_bad.append(rec)
        pairs.append(rec)
        worst = max(worst, n)
        if n > bound:
            bad.append(rec)
    return SlideReport(k, bound, pairs, worst, bad, cert_bad)


# -------------------------------------------------------------- projection


@dataclass
class BadCurve:
    index: int
    partner: int
    kind: int   # 1: disjoint from the partner, 2: crosses it


@dataclass
class ProjectionClassification:
    p: tuple
    marked: MarkedSurface
    curves: list
    inessential: dict = field(default_factory=dict)  # index -> other puncture q
    good: list = field(default_factory=list)
    bad: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"p": [str(c) for c in self.p],
                "inessential": {str(i): [str(c) for c in q] for i, q in sorted(self.inessential.items())},
                "good": self.good,
                "bad": [{"index": b.index, "partner": b.partner, "type": b.kind} for b in self.bad]}


class NotMinimalError(ValueError):
    """The input system has a removable bigon."""


def _curve_order_key(c: FlatCurve):
    return repr(c.to_json())


def fill_puncture_classify(curves: Sequence[FlatCurve], marked: MarkedSurface, p,
                           k: Optional[int] = None) -> ProjectionClassification:
    p = _frac_part(pt(*p))
    if p not in marked.punctures:
        raise ValueError("p must be a marked puncture")
    for i, j in combinations(range(len(curves)), 2):
        if has_bigon(curves[i], curves[j], marked):
            raise NotMinimalError(f"curves {i} and {j} bound a removable bigon")
        if k is not None and intersection_rel(curves[i], curves[j], marked) > k:
            raise ValueError(f"curves {i} and {j} intersect more than {k} times")
    filled = marked.without(p)
    cls = ProjectionClassification(p, marked, list(curves))
    groups: dict = {}
    pi = marked.punctures.index(p)
    for i, c in enumerate(curves):
        enc = enclosed_punctures(c, marked)
        if enc is not None and pi in enc and len(enc) == 2:
            q = marked.punctures[[e for e in enc if e != pi][0]]
            cls.inessential[i] = q
            continue
        if enc is not None and len(enc) <= 1:
            raise ValueError(f"curve {i} is inessential before filling")
        groups.setdefault(homotopy_key(c, filled), []).append(i)
    for members in groups.values():
        members = sorted(members, key=lambda i: _curve_order_key(curves[i]))
        g = members[0]
        cls.good.append(g)
        for b in members[1:]:
            n = len(find_crossings(curves[b], curves[g]))
            cls.bad.append(BadCurve(b, g, 1 if n == 0 else 2))
    cls.good.sort()
    cls.bad.sort(key=lambda b: b.index)
    return cls


def _crosses(seg: FlatCurve, curve: FlatCurve) -> bool:
    try:
        return bool(find_crossings(seg, curve))
    except NonTransverseError:
        return True


def _spoke_arc(c: FlatCurve, P, u, delta):
    h = c.translation
    w_out = c.point_at(u + delta)
    path = c.path(u + delta, u - delta + c.nseg)
    return FlatCurve(tuple([P, w_out] + path[1:] + [(P[0] + h[0], P[1] + h[1])]), ARC), w_out


def _nearest_lifts(c: FlatCurve, p, limit: int = 12):
    """Candidate attachment parameters on c, nearest lift first, with the p-lift used."""
    cands = []
    x0, x1, y0, y1 = c.bbox()
    for i in range(c.nseg):
        a, b = c.segment(i)
        d = _sub(b, a)
        dd = d[0] * d[0] + d[1] * d[1]
        for P in MarkedSurface((p,)).lifts_in(x0 - 1, x1 + 1, y0 - 1, y1 + 1):
            t = ((P[0] - a[0]) * d[0] + (P[1] - a[1]) * d[1]) / dd
            t = min(max(t, Fraction(1, 8)), Fraction(7, 8))
            z = (a[0] + t * d[0], a[1] + t * d[1])
            e = _sub(z, P)
            cands.append((e[0] * e[0] + e[1] * e[1], i + t, P))
    cands.sort(key=lambda t: (t[0], t[1], t[2]))
    return cands[:limit]


def bad_arc(c: FlatCurve, partner: FlatCurve, p, marked: MarkedSurface) -> FlatCurve:
    """Arc from p around c and back, attached by spokes that avoid c and its partner."""
    for _, u, P in _nearest_lifts(c, p):
        delta = Fraction(1, 16)
        for _ in range(6):
            arc, w_out = _spoke_arc(c, P, u, delta)
            w_in = c.point_at(u - delta)
            ok = True
            for w in (w_out, w_in):
                spoke = FlatCurve((P, w), ARC)
                if _crosses(spoke, partner) or _on_or_crosses(spoke, c) or _hits_puncture(spoke, marked, p):
                    ok = False
            if ok and is_simple(arc):
                return arc
            delta /= 2
    raise NonTransverseError("no spoke from p reaches the curve inside its region")


def _on_or_crosses(spoke: FlatCurve, c: FlatCurve) -> bool:
    # the spoke ends on c; only crossings strictly inside the spoke count
    try:
        hits = find_crossings(spoke, c)
    except NonTransverseError:
        return False if _only_end_contact(spoke, c) else True
    return bool(hits)


def _only_end_contact(spoke: FlatCurve, c: FlatCurve) -> bool:
    short = FlatCurve((spoke.vertices[0], _lerp(spoke.vertices[0], spoke.vertices[1], Fraction(15, 16))), ARC)
    try:
        return not find_crossings(short, c)
    except NonTransverseError:
        return False


def _lerp(a, b, t):
    return (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))


def _hits_puncture(spoke: FlatCurve, marked: MarkedSurface, p) -> bool:
    a, b = spoke.vertices
    x0, x1 = min(a[0], b[0]), max(a[0], b[0])
    y0, y1 = min(a[1], b[1]), max(a[1], b[1])
    for z in marked.lifts_in(x0, x1, y0, y1):
        if z == a:
            continue
        if (b[0] - a[0]) * (z[1] - a[1]) == (b[1] - a[1]) * (z[0] - a[0]):
            return True
    return False


def inessential_arc(c: FlatCurve, p, q) -> FlatCurve:
    """Segment from p to the lift of q that c encloses together with p."""
    from .flat_realization import winding_number

    verts = [c.vertex(i) for i in range(c.nseg)]
    xs = [v[0] for v in verts]
    ys = [v[1] for v in verts]
    ps = [z for z in MarkedSurface((p,)).lifts_in(min(xs), max(xs), min(ys), max(ys))
          if winding_number(verts, z) != 0]
    qs = [z for z in MarkedSurface((q,)).lifts_in(min(xs), max(xs), min(ys), max(ys))
          if winding_number(verts, z) != 0]
    if len(ps) != 1 or len(qs) != 1:
        raise ValueError("curve does not enclose exactly one lift of p and of q")
    arc = FlatCurve((ps[0], qs[0]), ARC)
    if _crosses(arc, c):
        raise NonTransverseError("straight segment from p to q leaves the enclosed disc")
    return arc


@dataclass
class ArcReport:
    k: int
    bad_arcs: dict
    inessential_arcs: dict
    bad_pairs: list
    inessential_pairs: list
    violations: list

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {"k": self.k, "bad_pairs": self.bad_pairs,
                "inessential_pairs": self.inessential_pairs,
                "violations": self.violations, "pass": self.passed}


def bad_and_inessential_arcs(cls: ProjectionClassification, k: int) -> ArcReport:
    marked = cls.marked
    bad_arcs = {b.index: bad_arc(cls.curves[b.index], cls.curves[b.partner], cls.p, marked)
                for b in cls.bad}
    ess_arcs = {i: inessential_arc(cls.curves[i], cls.p, q) for i, q in cls.inessential.items()}
    violations = []
    bad_pairs = []
    bad_bound = 1 if k == 2 else 2 * k
    if k == 2:
        for b in cls.bad:
            if b.kind != 1:
                violations.append({"rule": "k=2 bad curves are type (1)", "curve": b.index})
    for i, j in combinations(sorted(bad_arcs), 2):
        n = bigon_reduce(bad_arcs[i], bad_arcs[j], marked).count
        bad_pairs.append({"pair": [i, j], "count": n})
        if n > bad_bound:
            violations.append({"rule": f"bad arcs form a {bad_bound}-system", "pair": [i, j],
                               "count": n})
    ess_pairs = []
    for i, j in combinations(sorted(ess_arcs), 2):
        n = bigon_reduce(ess_arcs[i], ess_arcs[j], marked).count
        cd = intersection_rel(cls.curves[i], cls.curves[j], marked)
        eps = cd - 4 * n
        ess_pairs.append({"pair": [i, j], "count": n, "curve_count": cd, "epsilon": eps})
        if n > k - 1:
            violations.append({"rule": f"inessential arcs form a {k - 1}-system", "pair": [i, j],
                               "count": n})
        if eps not in (2, 4):
            violations.append({"rule": "curve count is 4 arc count plus 2 or 4", "pair": [i, j],
                               "epsilon": eps})
    return ArcReport(k, bad_arcs, ess_arcs, bad_pairs, ess_pairs, violations)


# ---------------------------------------------------------- random instances

def _rand_frac(rng: random.Random, den: int = 997) -> Fraction:
    return Fraction(rng.randrange(1, den), den)


def random_lattice_system(rng: random.Random, k: int, box: int = 4, size: Optional[int] = None) -> list:
    """Random maximal-by-greedy set of classes with pairwise |det| <= k."""
    pool = enumerate_curves(box)
    rng.shuffle(pool)
    chosen: list = []
    for c in pool:
        if all(intersection_number(c, d) <= k for d in chosen):
            chosen.append(c)
            if size is not None and len(chosen) >= size:
                break
    return sorted(chosen)


def random_line_realization(rng: random.Random, k: int, box: int = 4, size: Optional[int] = None):
    """Straight lines with random offsets realizing a random k-system on the torus."""
    classes = random_lattice_system(rng, k, box, size)
    for _ in range(50):
        curves = [_line_at(c, _rand_frac(rng)) for c in classes]
        try:
            ok = all(len(find_crossings(a, b)) == intersection_number(a.translation, b.translation)
                     for a, b in combinations(curves, 2))
            if ok and _no_triple_points(curves):
                return curves
        except NonTransverseError:
            continue
    raise RuntimeError("could not place lines in general position")


def _no_triple_points(curves) -> bool:
    seen = set()
    for a, b in combinations(curves, 2):
        for c in find_crossings(a, b):
            z = _frac_part(c.point)
            if z in seen:
                return False
            seen.add(z)
    return True


def random_slide_instance(rng: random.Random, k: int, box: int = 4):
    curves = random_line_realization(rng, k, box)
    g = rng.randrange(len(curves))
    for _ in range(50):
        ux = _rand_frac(rng)
        try:
            params = [d for i, a in enumerate(curves) if i != g
                      for d, _, _ in _gamma_params(curves[g], a, ux)]
        except NonTransverseError:
            continue
        if all(d not in (0, 1) for d in params):
            return curves, g, ux, rng.choice((1, -1))
    raise RuntimeError("could not place x off the crossings")


def _transverse(h, z) -> Fraction:
    # coordinate constant along lines of class h
    return (h[0] * z[1] - h[1] * z[0]) % 1


def _line_at(h, s) -> FlatCurve:
    """Straight curve of class h whose transverse coordinate is s."""
    from .lattice_curves import canonicalize

    c = canonicalize(*h)
    if c.q != 0:
        # point (x, 0): transverse value -q x
        x = (-s / c.q) % 1
        return line_curve(c, x)
    return FlatCurve(((Fraction(0), s),), CLOSED, (c.p, c.q))


def _loop_around(p, q, width: Fraction) -> FlatCurve:
    """Thin hexagon around the segment from p to q."""
    d = _sub(q, p)
    nrm = (-d[1], d[0])
    e = (d[0] * width, d[1] * width)
    n = (nrm[0] * width, nrm[1] * width)
    verts = [(p[0] - e[0], p[1] - e[1]), (p[0] - n[0], p[1] - n[1]), (q[0] - n[0], q[1] - n[1]),
             (q[0] + e[0], q[1] + e[1]), (q[0] + n[0], q[1] + n[1]), (p[0] + n[0], p[1] + n[1])]
    return FlatCurve(tuple(verts), CLOSED, (0, 0))


def random_projection_instance(rng: random.Random, k: int, extra_punctures: int = 1,
                               max_tries: int = 200):
    """A minimal-position k-system on a marked torus, with puncture p = punctures[0].

    Mixes straight lines, a parallel copy of one line on the far side of p,
    and thin loops around p and another puncture.
    """
    for _ in range(max_tries):
        punct = [(_rand_frac(rng), _rand_frac(rng)) for _ in range(1 + extra_punctures)]
        try:
            marked = MarkedSurface(tuple(punct))
        except ValueError:
            continue
        p = marked.punctures[0]
        classes = random_lattice_system(rng, k, 3, size=rng.randint(1, 3))
        curves = []
        for c in classes:
            curves.append(_line_at(c, _rand_frac(rng)))
        for h in classes:
            if rng.random() < 0.6:
                _add_parallel_copy(rng, curves, classes, h, marked)
        for q in marked.punctures[1:]:
            if rng.random() < 0.7:
                qq = min(((q[0] + i, q[1] + j) for i in (-1, 0, 1) for j in (-1, 0, 1)),
                         key=lambda z: (z[0] - p[0]) ** 2 + (z[1] - p[1]) ** 2)
                curves.append(_loop_around(p, qq, Fraction(1, 40 + rng.randrange(20))))
        if _valid_system(curves, marked, k):
            return curves, marked
    raise RuntimeError("no valid projection instance found")


def _add_parallel_copy(rng, curves, classes, h, marked):
    """Move the line of class h just to one side of p and add a copy on the other side."""
    p = marked.punctures[0]
    s_p = _transverse(h, p)
    others = sorted(_transverse(h, z) for z in marked.punctures[1:])
    if not others:
        return
    lo = max([s for s in others if s < s_p], default=others[-1] - 1)
    hi = min([s for s in others if s > s_p], default=others[0] + 1)
    s1 = s_p - (s_p - lo) * _rand_frac(rng)
    s2 = s_p + (hi - s_p) * _rand_frac(rng)
    base = classes.index(h)
    curves[base] = _line_at(h, s1 % 1)
    curves.append(_line_at(h, s2 % 1))


def _valid_system(curves, marked, k) -> bool:
    try:
        keys = set()
        for c in curves:
            if not is_simple(c):
                return False
            for z in marked.punctures:
                if _passes_through(c, z):
                    return False
            enc = enclosed_punctures(c, marked)
            if enc is not None and len(enc) <= 1:
                return False
            key = homotopy_key(c, marked)
            if key in keys:
                return False
            keys.add(key)
        for a, b in combinations(curves, 2):
            if has_bigon(a, b, marked):
                return False
            if intersection_rel(a, b, marked) > k:
                return False
    except NonTransverseError:
        return False
    return True


def _passes_through(c: FlatCurve, z) -> bool:
    from .flat_realization import _dist2_point_segment

    for i in range(c.nseg):
        a, b = c.segment(i)
        for w in MarkedSurface((z,)).lifts_in(min(a[0], b[0]) - 1, max(a[0], b[0]) + 1,
                                              min(a[1], b[1]) - 1, max(a[1], b[1]) + 1):
            if _dist2_point_segment(w, a, b) == 0:
                return True
    return False
