import math

import numpy as np
import pytest

from ksystems.fuchsian import (PRESETS, NoClosedGeodesic, StructureError, axis_translation,
                               build_structure, canonical_cyclic, christoffel_word, cyclic_reduce,
                               fixed_points, four_holed_sphere, free_reduce, is_proper_power,
                               is_simple_on_punctured_torus, one_holed_torus, pair_geometry, pants_glued,
                               pants_triple, parse_word, punctured_torus, translation_length,
                               word_inverse, word_str)

MOD_A = np.array([[1.0, 1.0], [1.0, 2.0]])
MOD_B = np.array([[1.0, -1.0], [-1.0, 2.0]])


def _inv(m):
    return np.linalg.inv(m)


def _semicircle(m):
    # endpoints of the axis of z -> (az+b)/(cz+d) on the real line
    a, b, c, d = m.ravel()
    disc = math.sqrt((d - a) ** 2 + 4 * b * c)
    p, q = ((a - d) - disc) / (2 * c), ((a - d) + disc) / (2 * c)
    return (p + q) / 2, abs(q - p) / 2


def test_modular_commutator_is_parabolic():
    comm = MOD_A @ MOD_B @ _inv(MOD_A) @ _inv(MOD_B)
    assert np.trace(comm) == pytest.approx(-2.0, abs=1e-12)
    st = PRESETS["modular"]()
    assert np.trace(st.eval((1, 2, -1, -2))) == pytest.approx(-2.0, abs=1e-12)


@pytest.mark.parametrize("x,y", [(3.0, 3.0), (3.0, 4.0), (2.5, 5.0)])
def test_trace_coordinates(x, y):
    st = punctured_torus(x, y)
    A, B = st.generators
    z = np.trace(A @ B)
    assert np.trace(A) == pytest.approx(x) and np.trace(B) == pytest.approx(y)
    assert x * x + y * y + z * z - x * y * z - 2 == pytest.approx(-2.0, abs=1e-9)
    assert np.trace(A @ B @ _inv(A) @ _inv(B)) == pytest.approx(-2.0, abs=1e-9)


def test_trace_coordinates_rejected():
    with pytest.raises(StructureError):
        punctured_torus(2.0, 3.0)
    with pytest.raises(StructureError):
        punctured_torus(2.1, 2.1)


def test_translation_length():
    assert translation_length(np.array([[2.0, 1.0], [1.0, 1.0]])) == pytest.approx(2 * math.acosh(1.5))
    assert translation_length(-np.array([[2.0, 1.0], [1.0, 1.0]])) == pytest.approx(1.9248473002384139)
    with pytest.raises(NoClosedGeodesic):
        translation_length(np.array([[1.0, 1.0], [0.0, 1.0]]))


def test_pants_triple():
    X = pants_triple(1.0, 2.0, 0.5)
    assert np.allclose(X[0] @ X[1] @ X[2], np.eye(2))
    for m, l in zip(X, (1.0, 2.0, 0.5)):
        assert translation_length(m) == pytest.approx(l)
    assert abs(np.trace(pants_triple(1.0, 1.0, 0.0)[2])) == pytest.approx(2.0)


def test_zero_length_gluing_rejected():
    with pytest.raises(StructureError):
        four_holed_sphere(0.0)


def test_axis_translation():
    c = np.array([[2.0, 1.0], [1.0, 1.0]])
    t = axis_translation(c, 0.7)
    assert translation_length(t) == pytest.approx(0.7)
    assert np.allclose(sorted(fixed_points(t)), sorted(fixed_points(c)))
    assert np.allclose(axis_translation(c, translation_length(c)), c)


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_presets_have_parabolic_cusps(name):
    st = PRESETS[name]()
    st.check_cusps()
    assert st.signature.hyperbolic


def test_glued_cuff_lengths():
    st = four_holed_sphere(1.5, 0.3)
    assert st.length(st.marked["cuff0.2"]) == pytest.approx(1.5, abs=1e-9)
    t = one_holed_torus(0.8, 0.2)
    assert t.length(t.marked["cuff0.0"]) == pytest.approx(0.8, abs=1e-9)


def test_build_structure_specs():
    assert build_structure({"construction": "trace", "x": 3, "y": 3}).signature.t == 1
    st = build_structure({"construction": "pants", "genus": 0, "punctures": 4, "pants": 2,
                          "gluings": [{"a": [0, 2], "b": [1, 0], "length": 1.5}]})
    assert st.free and st.rank == 3
    m = build_structure({"construction": "matrices", "genus": 1, "punctures": 1,
                         "matrices": MOD_A.tolist() and [MOD_A.tolist(), MOD_B.tolist()],
                         "cusp_words": ["abAB"]})
    assert m.length((1,)) == pytest.approx(1.924847300238, abs=1e-9)
    with pytest.raises(StructureError):
        build_structure({"construction": "matrices", "genus": 1, "punctures": 1,
                         "matrices": [[[2, 1], [1, 1]], [[3, 1], [2, 1]]], "cusp_words": ["abAB"]})


def test_words():
    assert parse_word("abAB") == (1, 2, -1, -2)
    assert word_str((1, -2, 3)) == "aBc"
    assert word_inverse((1, 2)) == (-2, -1)
    assert free_reduce((1, 2, -2, 3)) == (1, 3)
    assert cyclic_reduce((-1, 2, 3, 1)) == (2, 3)
    assert canonical_cyclic((2, 1)) == canonical_cyclic((1, 2)) == canonical_cyclic((-2, -1))
    assert is_proper_power((1, 2, 1, 2)) and not is_proper_power((1, 2, 2))


def test_simple_words_on_punctured_torus():
    assert christoffel_word(1, 0) == (1,)
    for p, q in [(1, 1), (2, 1), (3, 2), (1, 3)]:
        w = christoffel_word(p, q)
        assert sum(1 for x in w if abs(x) == 1) == p and sum(1 for x in w if abs(x) == 2) == q
        assert is_simple_on_punctured_torus(w)
    assert not is_simple_on_punctured_torus((1, 1, 2, 2))
    assert not is_simple_on_punctured_torus((1, 2, -1, -2, 1, 2))


def test_modular_axes_cross_at_known_angle():
    c1, r1 = _semicircle(MOD_A)
    c2, r2 = _semicircle(MOD_B)
    assert abs(c1 - c2) < r1 + r2 and abs(c1 - c2) > abs(r1 - r2)
    cos_direct = abs((c1 - c2) ** 2 - r1 ** 2 - r2 ** 2) / (2 * r1 * r2)
    st = PRESETS["modular"]()
    pg = pair_geometry((1,), (2,), st, reach=1.0)
    assert pg.verdict == "crossing"
    assert 0 < pg.angle <= math.pi / 2
    assert pg.angle == pytest.approx(math.acos(cos_direct), abs=1e-9)


def test_disjoint_cuffs():
    st = pants_glued(0, 5, 3, [((0, 2), (1, 0), 1.0, 0.0), ((1, 2), (2, 0), 1.2, 0.3)])
    a, b = st.marked["cuff0.2"], st.marked["cuff1.2"]
    pg = pair_geometry(a, b, st, reach=3.0)
    assert pg.verdict == "disjoint"
    # seam of the middle pants (cuffs 1.0, 1.2 and a cusp), right-angled hexagon formula
    h1, h2 = 0.5, 0.6
    cosh_d = (1 + math.cosh(h1) * math.cosh(h2)) / (math.sinh(h1) * math.sinh(h2))
    assert pg.distance == pytest.approx(math.acosh(cosh_d), abs=1e-7)
    assert pair_geometry(a, a, st, 1.0).verdict == "same"
