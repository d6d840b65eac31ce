import pytest

from twistkh.diagram import mirror
from twistkh.kauffman import euler_characteristic, jones, seed_check
from twistkh.khovanov import khovanov_homology


def test_jones_small_knots(cat):
    assert jones(cat["unknot"]) == {-1: 1, 1: 1}
    # q + q^-1 times the normalised Jones polynomial, in this package's q
    assert jones(cat["trefoil_rh"]) == {-9: -1, -5: 1, -3: 1, -1: 1}
    assert jones(cat["4_1"]) == {-5: 1, 5: 1}
    assert jones(cat["trivial"]) == {-1: 1, 1: 1}


def test_mirror_reverses_q(cat):
    for name in ("5_2", "7_7", "9_42"):
        j = jones(cat[name])
        assert jones(mirror(cat[name])) == {-q: c for q, c in j.items()}


@pytest.mark.parametrize("name", ["3_1", "5_1", "6_2", "7_3", "8_5", "8_19", "9_46", "10_124"])
def test_euler_characteristic_is_jones(cat, name):
    d = cat[name]
    h = khovanov_homology(d)
    assert euler_characteristic(h) == jones(d) == h.euler()
    assert seed_check(d, h)
