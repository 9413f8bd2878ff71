"""Surface signatures and pants-decomposition bookkeeping."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import total_ordering


@total_ordering
@dataclass(frozen=True)
class SurfaceSig:
    """Genus/puncture signature of an orientable surface S_{g,n}."""

    genus: int
    punctures: int

    def __post_init__(self):
        if self.genus < 0 or self.punctures < 0:
            raise ValueError("genus and punctures must be non-negative")

    def __lt__(self, other):
        if not isinstance(other, SurfaceSig):
            return NotImplemented
        return (self.genus, self.punctures) < (other.genus, other.punctures)

    @property
    def euler(self) -> int:
        return euler_characteristic(self)

    @property
    def t(self) -> int:
        """|chi|, the complexity measure used by every bound."""
        return abs(self.euler)

    @property
    def complexity(self) -> int:
        return 3 * self.genus - 3 + self.punctures

    @property
    def hyperbolic(self) -> bool:
        return self.euler < 0


def euler_characteristic(sig: SurfaceSig) -> int:
    return 2 - 2 * sig.genus - sig.punctures


@dataclass(frozen=True)
class PantsDecomposition:
    """Pants with three cuff slots each; a slot is a ``(pants, cuff)`` pair.

    ``gluings`` pairs up slots glued to each other (a pants may be glued to
    itself); ``boundary_cuffs`` lists the slots left free, which are cusps.
    """

    pants: int
    gluings: tuple = ()
    boundary_cuffs: tuple = ()

    @classmethod
    def from_json(cls, data: dict) -> "PantsDecomposition":
        pants = data["pants"]
        n_pants = pants if isinstance(pants, int) else len(pants)
        gluings = tuple(
            (tuple(g[0]), tuple(g[1])) if not isinstance(g, dict)
            else (tuple(g["a"]), tuple(g["b"]))
            for g in data.get("gluings", [])
        )
        free = data.get("boundary_cuffs")
        if free is None:
            used = {s for pair in gluings for s in pair}
            free = [(i, j) for i in range(n_pants) for j in range(3)
                    if (i, j) not in used]
        return cls(n_pants, gluings, tuple(tuple(s) for s in free))


@dataclass
class ValidationReport:
    valid: bool
    reason: str = ""
    counts: dict = field(default_factory=dict)

    def __bool__(self):
        return self.valid


def validate_pants(sig: SurfaceSig, pd: PantsDecomposition) -> ValidationReport:
    """Check the pants/gluing/free-cuff counts and connectivity for S_{g,n}."""
    if not sig.hyperbolic:
        raise ValueError(f"{sig} is not hyperbolic-admissible")
    g, n = sig.genus, sig.punctures
    counts = {"pants": pd.pants, "gluings": len(pd.gluings),
              "free_cuffs": len(pd.boundary_cuffs)}

    def fail(reason):
        return ValidationReport(False, reason, counts)

    if pd.pants != 2 * g - 2 + n:
        return fail("pants count")
    if len(pd.gluings) != 3 * g - 3 + n:
        return fail("interior cuff count")
    if len(pd.boundary_cuffs) != n:
        return fail("free cuff count")

    seen = set()
    slots = [s for pair in pd.gluings for s in pair] + list(pd.boundary_cuffs)
    for slot in slots:
        p, c = slot
        if not (0 <= p < pd.pants and 0 <= c < 3):
            return fail(f"cuff slot {slot} out of range")
        if slot in seen:
            return fail(f"cuff slot {slot} used twice")
        seen.add(slot)
    if len(seen) != 3 * pd.pants:
        return fail("unassigned cuff slot")

    # union-find over pants
    parent = list(range(pd.pants))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for (pa, _), (pb, _) in pd.gluings:
        parent[find(pa)] = find(pb)
    if len({find(i) for i in range(pd.pants)}) != 1:
        return fail("gluing graph disconnected")
    return ValidationReport(True, "", counts)
