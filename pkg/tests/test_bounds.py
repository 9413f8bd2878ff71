import math

import pytest

from ksystems.bounds import BOUND_IDS, BoundSpec, corollary_theta, eval_bound, recursion_bound, required_inputs


def test_hand_checked_values():
    assert eval_bound(BoundSpec("remark3.1"), t=2, D=4) == 15
    assert eval_bound(BoundSpec("prop3.1"), t=2, iota=8) == pytest.approx(4 * math.sqrt(32), abs=1e-12)
    assert round(eval_bound(BoundSpec("prop3.1"), t=2, iota=8), 3) == 22.627
    assert eval_bound(BoundSpec("thm1.3"), t=1, L=1) == pytest.approx(278.9, abs=0.1)


def test_formulas():
    C = {"C": 2.0}
    assert eval_bound(BoundSpec("thm1.1", C), t=3, k=2) == pytest.approx(2 * 3 ** 6 / math.log(3) ** 2)
    assert eval_bound(BoundSpec("thm1.4", C), t=3, k=2) == 2 * 3 ** 5
    assert eval_bound(BoundSpec("arcs-przytycki", C), t=3, k=2) == 2 * 3 ** 3
    assert eval_bound(BoundSpec("lower-eL4", C), t=3, L=8) == pytest.approx(2 * math.e ** 2 * 3)
    assert eval_bound(BoundSpec("thm1.2"), g=1, n=2, k=1) == 3 ** 4


def test_constants_default_and_override():
    assert BoundSpec("thm1.1").constants == {"C": 1.0}
    assert BoundSpec("thm1.3").constants == {"mu": 0.2629}
    lo = eval_bound(BoundSpec("thm1.3", {"mu": 0.5}), t=1, L=1)
    assert lo < eval_bound(BoundSpec("thm1.3"), t=1, L=1)


def test_errors():
    with pytest.raises(ValueError):
        eval_bound(BoundSpec("thm1.1"), t=1, k=1)
    with pytest.raises(ValueError):
        BoundSpec("thm9.9")
    with pytest.raises(ValueError):
        eval_bound(BoundSpec("prop3.1"), t=2)


def test_monotone_in_t_and_L():
    for bid in BOUND_IDS:
        need = required_inputs(bid)
        base = {"k": 2, "L": 3.0, "D": 2.0, "iota": 5.0, "g": 1, "n": 3}
        ts = range(2, 30)
        vals = [eval_bound(BoundSpec(bid), **{**{k: base[k] for k in need if k != "t"},
                                              **({"t": t} if "t" in need else {})}) for t in ts]
        assert vals == sorted(vals)
        if "L" in need:
            ls = [eval_bound(BoundSpec(bid), t=3, L=L) for L in (0.5, 1, 2, 4, 8)]
            assert ls == sorted(ls)


def test_recursion_examples():
    r = recursion_bound(2, 0, 3, base=7.0)
    assert r["step_sum"] == 7.0 and r["steps"] == []
    r = recursion_bound(1, 2, 1)
    assert r["step_sum"] == 2 ** 3 + 3 ** 3 == 35 and r["consistent"]
    r = recursion_bound(0, 3, 2)
    assert r["step_sum"] == 1 + 2 ** 5 + 3 ** 5 and r["closed_form"] == 3 ** 6
    c = recursion_bound(0, 3, 2, cubic=True)
    assert c["step_sum"] == 1 + 4 + 9 and c["closed_form"] == 27
    with pytest.raises(ValueError):
        recursion_bound(0, 3, 1, cubic=True)


def test_recursion_sweep():
    for g in range(11):
        for k in range(1, 5):
            for n in range(101):
                assert recursion_bound(g, n, k)["consistent"]


def test_corollary():
    r = corollary_theta(3, 2, g=0)
    assert r["lower"] == 1 and r["consistent"]
    assert corollary_theta(1)["lower"] <= corollary_theta(1)["upper"]
    with pytest.raises(ValueError):
        corollary_theta(3, k=3)
    # a too-small constant makes the upper bound fall below the construction
    assert not corollary_theta(10, C=0.001)["consistent"]
