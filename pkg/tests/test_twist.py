import math

import numpy as np
import pytest

from ksystems.fuchsian import abelianize
from ksystems.twist import (KINDS, build_pinched, check_length_bound, count_below, family_lengths,
                            fit_c0, growth_fit, lengths_csv)


@pytest.mark.parametrize("kind", KINDS)
def test_pinched_curve_has_length_r(kind):
    tf = build_pinched(kind, 0.05)
    assert tf.base.length(tf.alpha) == pytest.approx(0.05, abs=1e-6)
    tf.base.check_cusps()


def test_torus_seed_crosses_once():
    tf = build_pinched("one-holed-torus", 0.05)
    a, b = abelianize(tf.alpha, 2), abelianize(tf.beta, 2)
    assert abs(a[0] * b[1] - a[1] * b[0]) == 1


def test_policy_rejects_unpinched():
    for r in (0.5, 0.1, 0.0, -0.01):
        with pytest.raises(ValueError):
            build_pinched("four-holed", r)
    with pytest.raises(ValueError):
        family_lengths(build_pinched("four-holed", 0.05), 0)


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("m", [-3, -1, 1, 2, 5])
def test_twist_parameter_matches_word_oracle(kind, m):
    tf = build_pinched(kind, 0.05)
    n = m * (2 if kind == "four-holed" else 1)
    geometric = tf.length(n)
    algebraic = tf.base.length(tf.full_twist_word(m))
    assert geometric == pytest.approx(algebraic, rel=1e-8)


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("r", [0.01, 0.02, 0.05, 0.09])
def test_zero_twist_collar(kind, r):
    tf = build_pinched(kind, r)
    assert tf.length(0) >= tf.log_coef * math.log(1 / r)


@pytest.mark.parametrize("kind", KINDS)
def test_residuals_bounded_by_one_constant(kind):
    cal = build_pinched(kind, 0.05)
    c0 = fit_c0([(cal, family_lengths(cal, 100))])
    for r in (0.02, 0.05):
        tf = build_pinched(kind, r)
        chk = check_length_bound(tf, family_lengths(tf, 200), c0)
        assert chk.passed, chk.violations[:3]
        assert chk.min_residual > -50


def test_lengths_increase_with_twisting():
    tf = build_pinched("four-holed", 0.05)
    ls = [l for _, l in family_lengths(tf, 40)]
    assert all(b >= a - 1e-12 for a, b in zip(ls, ls[1:]))


def test_lengths_csv():
    tf = build_pinched("one-holed-torus", 0.05)
    text = lengths_csv(family_lengths(tf, 3))
    assert text.splitlines()[0] == "n,length" and len(text.splitlines()) == 5


def test_thread_independent():
    tf = build_pinched("four-holed", 0.05)
    assert family_lengths(tf, 30, threads=1) == family_lengths(tf, 30, threads=4)


def test_count_below_monotone():
    tf = build_pinched("one-holed-torus", 0.05)
    L0 = tf.length(0)
    assert count_below(tf, L0 - 1e-6) == 0
    assert count_below(tf, L0 + 1.0) <= count_below(tf, L0 + 2.0)


@pytest.mark.parametrize("kind,target", [("four-holed", 0.25), ("one-holed-torus", 0.5)])
def test_growth_slope(kind, target):
    fit = growth_fit(kind, np.linspace(8, 14, 7))
    assert abs(fit.slope - target) <= 0.1


def test_growth_needs_range():
    with pytest.raises(ValueError):
        growth_fit("four-holed", np.linspace(8, 9, 6))
    with pytest.raises(ValueError):
        growth_fit("four-holed", [8, 10, 12])
