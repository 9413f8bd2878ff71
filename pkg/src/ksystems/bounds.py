"""Closed-form bounds on k-systems with explicit, user-supplied constants."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .census import MU, census_count_bound

BOUND_IDS = ("thm1.1", "thm1.2", "thm1.3", "thm1.4", "arcs-przytycki", "prop3.1",
             "remark3.1", "lower-eL4")

# which inputs each bound reads
_INPUTS = {
    "thm1.1": ("t", "k"),
    "thm1.2": ("g", "n", "k"),
    "thm1.3": ("t", "L"),
    "thm1.4": ("t", "k"),
    "arcs-przytycki": ("t", "k"),
    "prop3.1": ("t", "iota"),
    "remark3.1": ("t", "D"),
    "lower-eL4": ("t", "L"),
}


@dataclass
class BoundSpec:
    id: str
    constants: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.id not in BOUND_IDS:
            raise ValueError(f"unknown bound {self.id!r}; choose from {', '.join(BOUND_IDS)}")
        consts = {"C": 1.0}
        if self.id == "thm1.3":
            consts = {"mu": MU}
        if self.id == "thm1.2":
            consts["base"] = 0.0
        if self.id in ("prop3.1", "remark3.1"):
            consts = {}
        consts.update(self.constants)
        self.constants = consts


def required_inputs(bound_id: str) -> tuple:
    return _INPUTS[bound_id]


def eval_bound(spec: BoundSpec, **inputs) -> float:
    missing = [k for k in _INPUTS[spec.id] if k not in inputs]
    if missing:
        raise ValueError(f"{spec.id} needs inputs {', '.join(missing)}")
    c = spec.constants
    i = inputs
    if spec.id == "thm1.1":
        t, k = i["t"], i["k"]
        if t < 2:
            raise ValueError("thm1.1 needs t >= 2 (log t vanishes at 1)")
        return c["C"] * t ** (3 * k) / math.log(t) ** 2
    if spec.id == "thm1.2":
        return recursion_bound(i["g"], i["n"], i["k"], c["C"], c["base"])["closed_form"]
    if spec.id == "thm1.3":
        return census_count_bound(i["L"], i["t"], c["mu"])
    if spec.id == "thm1.4":
        return c["C"] * i["t"] ** (3 * i["k"] - 1)
    if spec.id == "arcs-przytycki":
        return c["C"] * i["t"] ** (i["k"] + 1)
    if spec.id == "prop3.1":
        return 4 * math.sqrt(2 * i["t"] * i["iota"])
    if spec.id == "remark3.1":
        return 1.5 * i["t"] * (i["D"] + 1)
    return c["C"] * math.exp(i["L"] / 4) * i["t"]


def recursion_bound(g: int, n: int, k: int, C: float = 1.0, base: float = 0.0,
                    cubic: bool = False) -> dict:
    """Puncture-by-puncture recursion: step sum against its closed form.

    ``base`` stands for the closed-surface count N_k(S_{g,0}). With
    ``cubic`` (k = 2 only) the steps are C(g+i)^2 and the closed form C(g+n)^3.
    """
    if n < 0 or k < 1 or g < 0:
        raise ValueError("need g, n >= 0 and k >= 1")
    if cubic and k != 2:
        raise ValueError("the cubic variant is specific to k = 2")
    e = 2 if cubic else 2 * k + 1
    steps = [C * (g + i) ** e for i in range(1, n + 1)]
    step_sum = base + sum(steps)
    closed = base + C * (g + n) ** (e + 1)
    return {"g": g, "n": n, "k": k, "C": C, "base": base, "cubic": cubic,
            "steps": steps, "step_sum": step_sum, "closed_form": closed,
            "consistent": step_sum <= closed}


def corollary_theta(n: int, k: int = 2, g: int = 0, C: float = 1.0, base: float = 0.0) -> dict:
    if k != 2:
        raise ValueError("the Theta(n^3) statement is for k = 2")
    if n < 1:
        raise ValueError("n must be >= 1")
    lower = (g + n) ** (k + 1) / (k + 1) ** (k + 1)
    upper = recursion_bound(g, n, 2, C, base, cubic=True)["closed_form"]
    return {"n": n, "k": k, "g": g, "C": C, "base": base, "lower": lower, "upper": upper,
            "consistent": lower <= upper}
