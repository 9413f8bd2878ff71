"""Holonomy representations of surface groups in SL(2, R).

Words in the generators are tuples of non-zero ints: ``k`` is generator
``k - 1`` and ``-k`` its inverse. Axes of hyperbolic elements are handled
as binary quadratic forms: the fixed points of ``[[a, b], [c, d]]`` are
the roots of ``c z^2 + (d - a) z - b``, which avoids points at infinity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .surface_core import SurfaceSig

TRACE_TOL = 1e-9
DET_TOL = 1e-12
LETTERS = "abcdefghijklmnopqrstuvwxyz"


class StructureError(ValueError):
    """Inconsistent gluing data, a non-parabolic cusp, or an elliptic element."""


class NoClosedGeodesic(ValueError):
    """Raised for parabolic or elliptic input to translation_length."""


# ------------------------------------------------------------------ matrices

def normalize(m) -> np.ndarray:
    m = np.asarray(m, dtype=float).reshape(2, 2)
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    if det <= 0:
        raise StructureError("matrix must have positive determinant")
    m = m / math.sqrt(det)
    return m


def classify(m, tol: float = TRACE_TOL) -> str:
    t = abs(m[0, 0] + m[1, 1])
    if abs(t - 2) <= tol:
        return "parabolic"
    return "hyperbolic" if t > 2 else "elliptic"


def translation_length(m) -> float:
    t = abs(float(m[0, 0] + m[1, 1]))
    if t <= 2 + TRACE_TOL:
        raise NoClosedGeodesic(f"|trace| = {t} gives no closed geodesic")
    return 2 * math.acosh(t / 2)


def length_from_trace(t):
    return 2 * np.arccosh(np.abs(t) / 2)


def inv(m) -> np.ndarray:
    return np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]])


def axis_form(m) -> np.ndarray:
    """Quadratic form (A, B, C) whose roots are the fixed points of m."""
    m = np.asarray(m)
    return np.stack([m[..., 1, 0], m[..., 1, 1] - m[..., 0, 0], -m[..., 0, 1]], axis=-1)


def form_pairing(q1, q2):
    """|<q1, q2>| / sqrt(disc q1 disc q2): cos(angle) if < 1, cosh(dist) if > 1."""
    q1 = np.asarray(q1)
    q2 = np.asarray(q2)
    ip = q1[..., 1] * q2[..., 1] - 2 * q1[..., 0] * q2[..., 2] - 2 * q2[..., 0] * q1[..., 2]
    d1 = q1[..., 1] ** 2 - 4 * q1[..., 0] * q1[..., 2]
    d2 = q2[..., 1] ** 2 - 4 * q2[..., 0] * q2[..., 2]
    return np.abs(ip) / np.sqrt(d1 * d2)


def fixed_points(m) -> tuple:
    a, b, c, d = m[0, 0], m[0, 1], m[1, 0], m[1, 1]
    if abs(c) < 1e-15:
        return (math.inf, b / (d - a)) if abs(d - a) > 1e-15 else (math.inf, math.inf)
    disc = math.sqrt(max((d - a) ** 2 + 4 * b * c, 0.0))
    return ((a - d - disc) / (2 * c), (a - d + disc) / (2 * c))


# --------------------------------------------------------------------- words

def word_str(w: Sequence[int]) -> str:
    return "".join(LETTERS[k - 1] if k > 0 else LETTERS[-k - 1].upper() for k in w)


def parse_word(s: str) -> tuple:
    out = []
    for ch in s.strip():
        if ch.islower():
            out.append(LETTERS.index(ch) + 1)
        elif ch.isupper():
            out.append(-(LETTERS.index(ch.lower()) + 1))
        elif ch in " .*":
            continue
        else:
            raise ValueError(f"bad letter {ch!r}")
    return tuple(out)


def word_inverse(w):
    return tuple(-x for x in reversed(w))


def free_reduce(w):
    st = []
    for x in w:
        if st and st[-1] == -x:
            st.pop()
        else:
            st.append(x)
    return tuple(st)


def cyclic_reduce(w):
    w = free_reduce(w)
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    return w[i:j + 1]


def canonical_cyclic(w) -> tuple:
    """Least rotation of w or its inverse: the unoriented conjugacy class key."""
    w = cyclic_reduce(w)
    if not w:
        return ()
    cands = []
    for u in (w, word_inverse(w)):
        cands.extend(u[i:] + u[:i] for i in range(len(u)))
    return min(cands, key=_word_order)


def _word_order(w):
    # a < A < b < B ...
    return tuple(2 * abs(x) - (x > 0) for x in w)


def is_proper_power(w) -> bool:
    w = cyclic_reduce(w)
    n = len(w)
    for d in range(1, n // 2 + 1):
        if n % d == 0 and w == w[:d] * (n // d):
            return True
    return False


def abelianize(w, rank: int) -> tuple:
    v = [0] * rank
    for x in w:
        v[abs(x) - 1] += 1 if x > 0 else -1
    return tuple(v)


def christoffel_word(p: int, q: int) -> tuple:
    """Primitive element of F(a, b) abelianizing to (p, q), up to conjugacy."""
    if math.gcd(abs(p), abs(q)) != 1:
        raise ValueError("(p, q) must be primitive")
    n = abs(p) + abs(q)
    la = 1 if p >= 0 else -1
    lb = 2 if q >= 0 else -2
    w = []
    for i in range(1, n + 1):
        if (i * abs(q)) // n == ((i - 1) * abs(q)) // n:
            w.append(la)
        else:
            w.append(lb)
    return tuple(w)


def is_simple_on_punctured_torus(w) -> bool:
    """Simple closed curves on S_{1,1} are the primitive classes of F_2."""
    w = cyclic_reduce(w)
    if not w:
        return False
    p, q = abelianize(w, 2)
    if math.gcd(abs(p), abs(q)) != 1:
        return False
    return canonical_cyclic(w) == canonical_cyclic(christoffel_word(p, q))


# ---------------------------------------------------------------- structures

@dataclass
class HyperbolicStructure:
    signature: SurfaceSig
    generators: list
    construction: str
    free: bool = True
    cusp_words: list = field(default_factory=list)
    marked: dict = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    @property
    def rank(self) -> int:
        return len(self.generators)

    def eval(self, w) -> np.ndarray:
        m = np.eye(2)
        for x in w:
            g = self.generators[abs(x) - 1]
            m = m @ (g if x > 0 else inv(g))
        return m

    def length(self, w) -> float:
        return translation_length(self.eval(w))

    def check_cusps(self):
        for w in self.cusp_words:
            m = self.eval(w)
            # rounding error in a product scales with the product of the letter norms
            scale = math.prod(float(np.linalg.norm(self.generators[abs(x) - 1])) for x in w)
            tol = max(TRACE_TOL, 1e-12 * scale)
            if classify(m, tol) != "parabolic":
                raise StructureError(
                    f"cusp word {word_str(w)} has trace {m[0, 0] + m[1, 1]:.12g}")


def _trace_pair(x: float, y: float, z: float):
    """Matrices with tr A = x, tr B = y, tr AB = z."""
    if abs(z) < 2:
        raise StructureError("tr AB must satisfy |z| >= 2")
    s = (z - math.copysign(math.sqrt(z * z - 4), z)) / 2 if abs(z) > 2 else z / 2
    A = np.array([[x, -1.0], [1.0, 0.0]])
    B = np.array([[0.0, s], [-1.0 / s, y]])
    return A, B


def punctured_torus(x: float, y: float, root: str = "-") -> HyperbolicStructure:
    """S_{1,1} from trace coordinates; tr AB is the chosen Markov-type root."""
    if x <= 2 or y <= 2:
        raise StructureError("trace coordinates must exceed 2")
    disc = (x * y) ** 2 - 4 * (x * x + y * y)
    if disc < 0:
        raise StructureError("no real tr AB with parabolic commutator")
    z = (x * y + (1 if root == "+" else -1) * math.sqrt(disc)) / 2
    if z <= 2:
        z = (x * y + math.sqrt(disc)) / 2
    A, B = _trace_pair(x, y, z)
    st = HyperbolicStructure(SurfaceSig(1, 1), [A, B], "trace",
                             cusp_words=[(1, 2, -1, -2)], meta={"x": x, "y": y, "z": z})
    st.check_cusps()
    return st


def from_matrices(mats, genus: int, punctures: int, cusp_words=(), free: Optional[bool] = None):
    gens = [normalize(m) for m in mats]
    if free is None:
        free = punctures >= 1 and len(gens) == 2 * genus + punctures - 1
    st = HyperbolicStructure(SurfaceSig(genus, punctures), gens, "matrices", free=free,
                             cusp_words=[tuple(w) for w in cusp_words])
    st.check_cusps()
    return st


def modular_torus() -> HyperbolicStructure:
    st = from_matrices([[[1, 1], [1, 2]], [[1, -1], [-1, 2]]], 1, 1, cusp_words=[(1, 2, -1, -2)])
    st.meta["name"] = "modular"
    return st


def thrice_punctured_sphere() -> HyperbolicStructure:
    st = from_matrices([[[1, 2], [0, 1]], [[1, 0], [-2, 1]]], 0, 3,
                       cusp_words=[(1,), (2,), (1, 2)])
    st.meta["name"] = "level2"
    return st


# --------------------------------------------------------------- pants gluing

def pants_triple(l1: float, l2: float, l3: float):
    """Cuff holonomies X1, X2, X3 with X1 X2 X3 = I (length 0 = cusp)."""
    for l in (l1, l2, l3):
        if l < 0:
            raise StructureError("cuff lengths must be non-negative")
    x = 2 * math.cosh(l1 / 2)
    y = 2 * math.cosh(l2 / 2)
    z = -2 * math.cosh(l3 / 2)
    A, B = _trace_pair(x, y, z)
    return [A, B, inv(A @ B)]


def _positive(m):
    return m if m[0, 0] + m[1, 1] > 0 else -m


def axis_translation(c, t: float) -> np.ndarray:
    """Hyperbolic element with the axis and direction of c, translating by t."""
    c = _positive(c)
    tr = c[0, 0] + c[1, 1]
    sh = math.sqrt(tr * tr / 4 - 1)
    return math.cosh(t / 2) * np.eye(2) + (math.sinh(t / 2) / sh) * (c - tr / 2 * np.eye(2))


def _eigvecs(c):
    """Columns: attracting then repelling eigenvector, in closed form."""
    c = _positive(c)
    a, b, cc, d = c[0, 0], c[0, 1], c[1, 0], c[1, 1]
    t = a + d
    r = math.sqrt(t * t - 4)
    cols = []
    for lam in ((t + r) / 2, (t - r) / 2):
        v1 = np.array([b, lam - a])
        v2 = np.array([lam - d, cc])
        v = v1 if np.hypot(*v1) >= np.hypot(*v2) else v2
        cols.append(v / np.hypot(*v))
    return np.column_stack(cols)


def _conjugator(src, dst):
    """Orientation-preserving M with M src M^-1 = dst (equal translation lengths)."""
    ps = _eigvecs(src)
    pd = _eigvecs(dst)
    m = pd @ np.linalg.inv(ps)
    if np.linalg.det(m) < 0:
        pd = pd.copy()
        pd[:, 1] *= -1
        m = pd @ np.linalg.inv(ps)
    return normalize(m)


def _to_standard(c):
    """Möbius map sending the axis of c to (0, inf), attracting end to inf."""
    v = _eigvecs(c)
    m = np.linalg.inv(v)
    if np.linalg.det(m) < 0:
        m = np.diag([1.0, -1.0]) @ m
    return normalize(m)


def _foot_height(std, other):
    """log-height of the foot of the perpendicular from (0, inf) to other's axis."""
    o = std @ other @ inv(std)
    if classify(o) == "parabolic":
        u = fixed_points(o)
        u = u[0] if math.isfinite(u[0]) else u[1]
        return math.log(abs(u))
    u1, u2 = fixed_points(o)
    return 0.5 * math.log(abs(u1 * u2))


def _seam_offset(cuff, other_src, other_dst):
    std = _to_standard(cuff)
    return _foot_height(std, other_src) - _foot_height(std, other_dst)


def pants_glued(genus: int, punctures: int, pants: int, gluings, boundary_cuffs=None):
    """Fenchel-Nielsen style gluing of pants along cuffs.

    ``gluings``: list of ``((p, c), (q, d), length, twist)``. Free cuffs are
    cusps. Twist zero aligns the feet of the perpendiculars from the glued
    cuff to the next cuff of each pants.
    """
    from .surface_core import PantsDecomposition, validate_pants

    glue = [(tuple(a), tuple(b), float(l), float(t)) for a, b, l, t in gluings]
    pd = PantsDecomposition(pants, tuple((a, b) for a, b, _, _ in glue),
                            tuple(tuple(s) for s in boundary_cuffs) if boundary_cuffs is not None
                            else tuple((i, j) for i in range(pants) for j in range(3)
                                       if (i, j) not in {s for a, b, _, _ in glue for s in (a, b)}))
    sig = SurfaceSig(genus, punctures)
    rep = validate_pants(sig, pd)
    if not rep:
        raise StructureError(f"inconsistent gluing data: {rep.reason}")
    lengths = {}
    for a, b, l, _ in glue:
        if l <= 0:
            raise StructureError("glued cuffs need positive length")
        lengths[a] = lengths[b] = l
    cuff_len = [[lengths.get((i, j), 0.0) for j in range(3)] for i in range(pants)]

    gens: dict = {}       # name -> matrix
    cuff_word: dict = {}  # slot -> word over names, as list of (name, +-1)
    cuff_mat: dict = {}
    placed = set()
    counter = [0]

    def new_gen(m):
        name = counter[0]
        counter[0] += 1
        gens[name] = m
        return [(name, 1)]

    def w_inv(w):
        return [(n, -e) for n, e in reversed(w)]

    def place_root(i):
        X = pants_triple(*cuff_len[i])
        cuff_mat[(i, 0)], cuff_mat[(i, 1)], cuff_mat[(i, 2)] = X
        cuff_word[(i, 0)] = new_gen(X[0])
        cuff_word[(i, 1)] = new_gen(X[1])
        cuff_word[(i, 2)] = w_inv(cuff_word[(i, 0)] + cuff_word[(i, 1)])
        placed.add(i)

    def seam(slot):
        p, c = slot
        return cuff_mat[(p, (c + 1) % 3)]

    relations = []
    place_root(0)
    pending = list(glue)
    progress = True
    while pending and progress:
        progress = False
        for item in list(pending):
            a, b, l, tw = item
            if a[0] in placed and b[0] in placed:
                continue
            if b[0] in placed and a[0] not in placed:
                a, b = b, a
            if a[0] not in placed:
                continue
            q, d = b
            X = pants_triple(*cuff_len[q])
            local = {(q, j): X[j] for j in range(3)}
            target = inv(cuff_mat[a])
            M = _conjugator(local[b], target)
            conj = {s: M @ m @ inv(M) for s, m in local.items()}
            off = _seam_offset(target, seam(a), conj[(q, (d + 1) % 3)])
            T = axis_translation(target, off + tw)
            for s in conj:
                cuff_mat[s] = T @ conj[s] @ inv(T)
            cuff_word[b] = w_inv(cuff_word[a])
            nxt = (q, (d + 1) % 3)
            cuff_word[nxt] = new_gen(cuff_mat[nxt])
            cuff_word[(q, (d + 2) % 3)] = w_inv(cuff_word[b] + cuff_word[nxt])
            placed.add(q)
            pending.remove(item)
            progress = True
    if len(placed) != pants:
        raise StructureError("gluing graph disconnected")

    for a, b, l, tw in pending:
        # HNN: new generator t with t X_b t^-1 = X_a^-1
        target = inv(cuff_mat[a])
        M = _conjugator(cuff_mat[b], target)
        off = _seam_offset(target, seam(a), M @ seam(b) @ inv(M))
        t = axis_translation(target, off + tw) @ M
        tw_ = new_gen(t)
        relations.append((a, b, tw_[0][0]))

    # eliminate generators with the HNN relations where a cuff word is a single letter
    free = punctures >= 1
    for a, b, tname in relations:
        wa, wb = cuff_word[a], cuff_word[b]
        if len(wb) == 1 and wb[0][0] not in {n for n, _ in wa} and wb[0][0] != tname:
            g, e = wb[0]
            repl = [(tname, -1)] + w_inv(wa) + [(tname, 1)]  # X_b = t^-1 X_a^-1 t
        elif len(wa) == 1 and wa[0][0] not in {n for n, _ in wb} and wa[0][0] != tname:
            g, e = wa[0]
            repl = [(tname, 1)] + w_inv(wb) + [(tname, -1)]  # X_a = t X_b^-1 t^-1
        else:
            free = False
            continue
        sub = repl if e == 1 else w_inv(repl)
        for s, w in cuff_word.items():
            out = []
            for n, ee in w:
                if n == g:
                    out.extend(sub if ee == 1 else w_inv(sub))
                else:
                    out.append((n, ee))
            cuff_word[s] = out
        del gens[g]
    names = sorted(gens)
    index = {n: i + 1 for i, n in enumerate(names)}
    if free and len(names) != 2 * genus + punctures - 1:
        free = False

    def to_word(w):
        return free_reduce(tuple(index[n] * e for n, e in w))

    cusp_words = [to_word(cuff_word[s]) for s in pd.boundary_cuffs]
    st = HyperbolicStructure(sig, [gens[n] for n in names],
                             "pants", free=free, cusp_words=cusp_words,
                             meta={"cuffs": {f"{s[0]}.{s[1]}": word_str(to_word(cuff_word[s]))
                                             for s in sorted(cuff_word)}})
    st.marked = {f"cuff{s[0]}.{s[1]}": to_word(cuff_word[s]) for s in cuff_word}
    st.check_cusps()
    return st


def build_structure(spec: dict) -> HyperbolicStructure:
    kind = spec.get("construction")
    if kind == "trace":
        return punctured_torus(float(spec["x"]), float(spec["y"]), spec.get("root", "-"))
    if kind == "matrices":
        return from_matrices(spec["matrices"], int(spec.get("genus", 1)), int(spec.get("punctures", 1)),
                             [parse_word(w) if isinstance(w, str) else tuple(w)
                              for w in spec.get("cusp_words", [])], spec.get("free"))
    if kind == "pants":
        gl = []
        for g in spec["gluings"]:
            gl.append((tuple(g["a"]), tuple(g["b"]), g["length"], g.get("twist", 0.0)))
        pants = spec["pants"]
        return pants_glued(int(spec["genus"]), int(spec["punctures"]),
                           pants if isinstance(pants, int) else len(pants), gl,
                           spec.get("boundary_cuffs"))
    if kind == "preset":
        return PRESETS[spec["name"]]()
    raise StructureError(f"unknown construction {kind!r}")


def four_holed_sphere(r: float, twist: float = 0.0) -> HyperbolicStructure:
    return pants_glued(0, 4, 2, [((0, 2), (1, 0), r, twist)])


def one_holed_torus(r: float, twist: float = 0.0) -> HyperbolicStructure:
    return pants_glued(1, 1, 1, [((0, 0), (0, 1), r, twist)])


PRESETS = {
    "modular": modular_torus,
    "torus34": lambda: punctured_torus(3.0, 4.0),
    "level2": thrice_punctured_sphere,
    "sphere4": lambda: four_holed_sphere(1.5, 0.3),
    "sphere5": lambda: pants_glued(0, 5, 3, [((0, 2), (1, 0), 0.2, 0.0),
                                             ((1, 2), (2, 0), 0.2, 0.1)]),
}


# ------------------------------------------------------------ group ball

@dataclass
class GroupBall:
    """Group elements g with d(i, g i) <= radius, found by pruned word search."""

    words: list
    mats: np.ndarray
    disp: np.ndarray
    radius: float
    complete: bool


def cosh_displacement(m):
    m = np.asarray(m)
    return 0.5 * np.sum(m.reshape(*m.shape[:-2], 4) ** 2, axis=-1)


def group_ball(st: HyperbolicStructure, radius: float, slack: float = 2.0,
               max_nodes: int = 400_000, max_level: int = 20_000) -> GroupBall:
    letters = [k for i in range(st.rank) for k in (i + 1, -(i + 1))]
    lmats = np.array([st.generators[abs(k) - 1] if k > 0 else inv(st.generators[abs(k) - 1])
                      for k in letters])
    prune = math.cosh(radius + slack)
    keep = math.cosh(radius)
    words = [()]
    mats = [np.eye(2)]
    front_w = [()]
    front_m = np.eye(2)[None]
    level = 0
    complete = True
    while front_w:
        level += 1
        if level > max_level or len(words) > max_nodes:
            complete = False
            break
        prod = np.einsum("nij,ljk->nlik", front_m, lmats)
        ch = cosh_displacement(prod)
        new_w, new_m = [], []
        for ni, w in enumerate(front_w):
            last = w[-1] if w else 0
            for li, k in enumerate(letters):
                if k == -last or ch[ni, li] > prune:
                    continue
                new_w.append(w + (k,))
                new_m.append(prod[ni, li])
        front_w = new_w
        front_m = np.array(new_m) if new_m else np.zeros((0, 2, 2))
        words.extend(new_w)
        mats.extend(new_m)
    mats = np.array(mats)
    ch = cosh_displacement(mats)
    sel = ch <= keep
    return GroupBall([w for w, s in zip(words, sel) if s], mats[sel],
                     np.arccosh(np.maximum(ch[sel], 1.0)), radius, complete)


def dist_to_axis(m) -> float:
    """Hyperbolic distance from i to the axis of m."""
    q = axis_form(m)
    # the point i corresponds to the definite form X^2 + Y^2 = (1, 0, 1)
    a, b, c = q
    disc = b * b - 4 * a * c
    return math.asinh(abs(a + c) / math.sqrt(disc))


def rebalance(st: HyperbolicStructure, rounds: int = 200):
    """Conjugate and change basis so that generators move i as little as possible.

    Returns the new structure and a function translating old words to new ones.
    """
    from scipy.optimize import minimize

    gens = [np.array(g, dtype=float) for g in st.generators]
    rank = len(gens)

    def cost(v, gs):
        h = np.array([[math.exp(v[1] / 2), v[0] * math.exp(-v[1] / 2)], [0.0, math.exp(-v[1] / 2)]])
        hi = inv(h)
        return sum(math.log(cosh_displacement(hi @ g @ h)) for g in gs)

    def center(gs):
        res = minimize(cost, np.zeros(2), args=(gs,), method="Nelder-Mead",
                       options={"xatol": 1e-10, "fatol": 1e-12, "maxiter": 4000})
        x, t = res.x
        h = np.array([[math.exp(t / 2), x * math.exp(-t / 2)], [0.0, math.exp(-t / 2)]])
        return [inv(h) @ g @ h for g in gs]

    old_in_new = [(k + 1,) for k in range(rank)]
    gens = center(gens)
    for _ in range(rounds):
        best = None
        disp = [cosh_displacement(g) for g in gens]
        for i in range(rank):
            for j in range(rank):
                if i == j:
                    continue
                for e in (1, -1):
                    gj = gens[j] if e == 1 else inv(gens[j])
                    for side, cand in (("r", gens[i] @ gj), ("l", gj @ gens[i])):
                        c = cosh_displacement(cand)
                        if c < disp[i] * (1 - 1e-9) and (best is None or c < best[0]):
                            best = (c, i, j, e, side, cand)
        if best is None:
            break
        _, i, j, e, side, cand = best
        gens[i] = cand
        # old letter i is now g_i' g_j^-e (or g_j^-e g_i')
        sub = ((i + 1, -e * (j + 1)) if side == "r" else (-e * (j + 1), i + 1))
        new = []
        for w in old_in_new:
            out = []
            for x in w:
                if abs(x) == i + 1:
                    out.extend(sub if x > 0 else word_inverse(sub))
                else:
                    out.append(x)
            new.append(free_reduce(tuple(out)))
        old_in_new = new
        gens = center(gens)

    def translate(w):
        out = []
        for x in w:
            out.extend(old_in_new[abs(x) - 1] if x > 0 else word_inverse(old_in_new[abs(x) - 1]))
        return free_reduce(tuple(out))

    new_st = HyperbolicStructure(st.signature, gens, st.construction, st.free,
                                 [translate(w) for w in st.cusp_words],
                                 {k: translate(w) for k, w in st.marked.items()}, dict(st.meta))
    return new_st, translate


@dataclass
class PairGeometry:
    verdict: str           # "crossing" | "disjoint" | "same" | "undetermined"
    angle: Optional[float] = None
    distance: Optional[float] = None
    translates: int = 0


def pair_geometry(wa, wb, st: HyperbolicStructure, reach: float,
                  ball: Optional[GroupBall] = None) -> PairGeometry:
    """Minimal crossing angle or distance between two closed geodesics.

    Every crossing point, and every approach closer than ``reach``, is
    realized by a translate g.axis(b) passing within (l_a + l_b)/2 + reach
    of the basepoint segment of axis(a), so only group elements moving i by
    at most that plus the basepoint offsets are needed.
    """
    if canonical_cyclic(wa) == canonical_cyclic(wb):
        return PairGeometry("same", distance=0.0)
    ma, mb = st.eval(wa), st.eval(wb)
    la, lb = translation_length(ma), translation_length(mb)
    need = (la + lb) / 2 + reach + dist_to_axis(ma) + dist_to_axis(mb) + 1e-6
    if ball is None or ball.radius < need:
        ball = group_ball(st, need)
    if not ball.complete:
        return PairGeometry("undetermined")
    sel = ball.disp <= need
    g = ball.mats[sel]
    conj = g @ mb @ np.array([inv(x) for x in g]) if len(g) else np.zeros((0, 2, 2))
    r = form_pairing(axis_form(ma)[None], axis_form(conj))
    cross = r < 1 - 1e-12
    if np.any(cross):
        ang = float(np.min(np.arccos(np.clip(r[cross], 0.0, 1.0))))
        return PairGeometry("crossing", angle=ang, translates=int(len(g)))
    dist = float(np.min(np.arccosh(np.maximum(r, 1.0)))) if len(r) else math.inf
    return PairGeometry("disjoint", distance=min(dist, reach),
                        translates=int(len(g)))
