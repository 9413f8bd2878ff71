import random
from fractions import Fraction as Fr

import pytest

from ksystems.flat_realization import (ARC, CLOSED, FlatCurve, MarkedSurface, bigon_reduce,
                                       intersection_rel, is_simple)
from ksystems.reductions import (NotMinimalError, bad_and_inessential_arcs, fill_puncture_classify,
                                 inessential_arc, random_projection_instance, random_slide_instance,
                                 slide_to_arcs, verify_slide_bound)


def _line(v0, h):
    return FlatCurve((v0,), CLOSED, h)


def _rect(x0, y0, x1, y1):
    return FlatCurve(((x0, y0), (x1, y0), (x1, y1), (x0, y1)), CLOSED, (0, 0))


GAMMA = _line((Fr(0), Fr(1, 2)), (1, 0))
VERT = _line((Fr(1, 3), Fr(0)), (0, 1))
DIAG = _line((Fr(2, 3), Fr(0)), (1, 1))


def test_slide_k1_example():
    res = slide_to_arcs([GAMMA, VERT, DIAG], 0, Fr(1, 2))
    assert len(res.arcs) == 2
    for a in res.arcs:
        assert a.arc.kind == ARC and is_simple(a.arc)
        assert a.arc.vertices[0] == (Fr(1, 2), Fr(1, 2))
    rep = verify_slide_bound(res, 1, [GAMMA, VERT, DIAG])
    assert rep.passed and rep.max_count <= 1


def test_slide_arcs_keep_homology():
    res = slide_to_arcs([GAMMA, VERT, DIAG], 0, Fr(1, 2))
    assert sorted(a.arc.translation for a in res.arcs) == [(0, 1), (1, 1)]


def test_slide_gamma_alone():
    res = slide_to_arcs([GAMMA], 0, Fr(1, 2))
    assert res.arcs == []
    assert verify_slide_bound(res, 1).passed


def test_slide_x_on_crossing():
    with pytest.raises(ValueError):
        slide_to_arcs([GAMMA, VERT, DIAG], 0, Fr(1, 3))


def test_slide_single_arc_vacuous():
    res = slide_to_arcs([GAMMA, VERT], 0, Fr(1, 2))
    rep = verify_slide_bound(res, 1, [GAMMA, VERT])
    assert rep.passed and rep.pairs == []


def test_slide_both_orientations():
    for o in (1, -1):
        res = slide_to_arcs([GAMMA, VERT, DIAG], 0, Fr(1, 2), orientation=o)
        assert verify_slide_bound(res, 1, [GAMMA, VERT, DIAG]).passed


@pytest.mark.parametrize("seed", range(30))
def test_slide_random_k2(seed):
    rng = random.Random(seed)
    curves, g, ux, orient = random_slide_instance(rng, 2)
    rep = verify_slide_bound(slide_to_arcs(curves, g, ux, orient), 2, curves)
    assert rep.passed and rep.max_count <= 4


def test_inessential_loop_on_s12():
    p, q = (Fr(3, 10), Fr(1, 2)), (Fr(6, 10), Fr(1, 2))
    m = MarkedSurface((p, q))
    c = _rect(Fr(2, 10), Fr(4, 10), Fr(7, 10), Fr(6, 10))
    cls = fill_puncture_classify([c], m, p, 1)
    assert cls.inessential == {0: q}
    arc = inessential_arc(c, p, q)
    assert arc.vertices[0] == p and arc.vertices[-1] == q


def test_parallel_curves_separated_by_p():
    p, q = (Fr(1, 2), Fr(1, 2)), (Fr(1, 2), Fr(0))
    m = MarkedSurface((p, q))
    a = _line((Fr(0), Fr(1, 4)), (1, 0))
    b = _line((Fr(0), Fr(3, 4)), (1, 0))
    cls = fill_puncture_classify([a, b], m, p, 1)
    assert len(cls.good) == 1 and len(cls.bad) == 1
    assert cls.bad[0].kind == 1
    rep = bad_and_inessential_arcs(cls, 1)
    assert rep.passed and rep.bad_pairs == []


def _bumped_pair():
    a = _line((Fr(0), Fr(1, 2)), (1, 0))
    b = FlatCurve(((Fr(0), Fr(2, 5)), (Fr(3, 10), Fr(2, 5)), (Fr(7, 20), Fr(3, 5)),
                   (Fr(13, 20), Fr(3, 5)), (Fr(7, 10), Fr(2, 5))), CLOSED, (1, 0))
    p, q = (Fr(1, 2), Fr(11, 20)), (Fr(17, 20), Fr(9, 20))
    return a, b, p, MarkedSurface((p, q))


def test_crossing_pair_is_type_two():
    a, b, p, m = _bumped_pair()
    assert intersection_rel(a, b, m) == 2
    cls = fill_puncture_classify([a, b], m, p, 3)
    assert [x.kind for x in cls.bad] == [2]
    assert bad_and_inessential_arcs(cls, 3).passed


def test_crossing_pair_flagged_for_k2():
    # the second complementary region holds q, so the pair is minimal and becomes
    # homotopic once p is filled; the k=2 type-(1) check reports it
    a, b, p, m = _bumped_pair()
    rep = bad_and_inessential_arcs(fill_puncture_classify([a, b], m, p, 2), 2)
    assert [v["rule"] for v in rep.violations] == ["k=2 bad curves are type (1)"]


def test_non_minimal_rejected():
    a, b, p, _ = _bumped_pair()
    with pytest.raises(NotMinimalError):
        fill_puncture_classify([a, b], MarkedSurface((p,)), p, 2)


def test_two_inessential_loops_on_s13():
    p, q, q2 = (Fr(1, 2), Fr(1, 2)), (Fr(1, 4), Fr(1, 2)), (Fr(3, 4), Fr(1, 2))
    m = MarkedSurface((p, q, q2))
    c = _rect(Fr(15, 100), Fr(40, 100), Fr(60, 100), Fr(60, 100))
    d = _rect(Fr(40, 100), Fr(35, 100), Fr(85, 100), Fr(65, 100))
    assert bigon_reduce(c, d, m).count == 2
    cls = fill_puncture_classify([c, d], m, p, 2)
    assert cls.inessential == {0: q, 1: q2}
    rep = bad_and_inessential_arcs(cls, 2)
    (pair,) = rep.inessential_pairs
    assert pair["count"] == 0 and pair["curve_count"] == 2 and pair["epsilon"] == 2
    assert rep.passed


@pytest.mark.parametrize("seed", range(20))
def test_projection_random(seed):
    rng = random.Random(seed)
    k = (1, 2, 3)[seed % 3]
    curves, marked = random_projection_instance(rng, k, extra_punctures=1 + seed % 3)
    cls = fill_puncture_classify(curves, marked, marked.punctures[0], k)
    rep = bad_and_inessential_arcs(cls, k)
    assert rep.passed, rep.violations
    if k == 2:
        assert all(b.kind == 1 for b in cls.bad)
        assert all(x["count"] <= 1 for x in rep.bad_pairs)
