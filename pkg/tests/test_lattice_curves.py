from itertools import product
from math import gcd

import pytest

from ksystems.lattice_curves import (canonicalize, enumerate_curves, from_csv, intersection_number,
                                     is_canonical, to_csv)


@pytest.mark.parametrize("raw,canon", [((2, 4), (1, 2)), ((-1, 0), (1, 0)), ((0, -3), (0, 1)),
                                       ((-2, -6), (1, 3))])
def test_canonicalize(raw, canon):
    assert canonicalize(*raw) == canon
    assert is_canonical(canon)


def test_zero_vector():
    with pytest.raises(ValueError):
        canonicalize(0, 0)


def test_intersection_examples():
    assert intersection_number((1, 0), (0, 1)) == 1
    assert intersection_number((1, 1), (1, -1)) == 2
    assert intersection_number((1, 0), (1, 0)) == 0


def _brute(box):
    seen = set()
    for p, q in product(range(-box, box + 1), repeat=2):
        if (p, q) != (0, 0) and gcd(abs(p), abs(q)) == 1:
            seen.add((p, q) if (p > 0 or (p == 0 and q > 0)) else (-p, -q))
    return sorted(seen)


@pytest.mark.parametrize("box", [1, 2, 3, 5])
def test_enumerate_matches_brute_force(box):
    assert [tuple(c) for c in enumerate_curves(box)] == _brute(box)


def test_enumerate_small_boxes():
    assert set(enumerate_curves(1)) == {(1, 0), (0, 1), (1, 1), (1, -1)}
    assert len(enumerate_curves(2)) == 8
    with pytest.raises(ValueError):
        enumerate_curves(0)


def test_csv_roundtrip():
    cs = enumerate_curves(3)
    assert from_csv(to_csv(cs)) == cs
    assert to_csv([]) == "p,q\n"
