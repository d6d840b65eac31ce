from fractions import Fraction

import pytest

from twistkh.complex import BigradedHomology, homology, les_ranks
from twistkh.diagram import DiagramError, TwistSite, insert_twists, make_diagram, mirror, site_is_antiparallel
from twistkh.khovanov import (
    Theory, frobenius_data, khovanov_homology, krasner_q, krasner_twist_complex, map_F, map_G,
    s_invariant, splice,
)


def free(pairs, flavor=None):
    return BigradedHomology.from_free({k: 1 for k in pairs}, flavor)


def test_unknot(cat):
    u = cat["unknot"]
    assert khovanov_homology(u) == free([(0, 1), (0, -1)])
    assert khovanov_homology(u, "reduced") == free([(0, 0)])
    assert khovanov_homology(u, "equivariant") == free([(0, 1), (0, -1)])


def test_trefoils(cat):
    right = khovanov_homology(cat["trefoil_rh"])
    assert right == free([(0, -1), (0, -3), (2, -5), (3, -9)])
    assert khovanov_homology(cat["3_1"]) == free([(0, 1), (0, 3), (-2, 5), (-3, 9)])
    assert khovanov_homology(cat["trefoil_rh"], "reduced") == free([(0, -2), (2, -6), (3, -8)])
    eq = khovanov_homology(cat["trefoil_rh"], "equivariant")
    assert eq.free_part() == free([(0, -1), (0, -3)])
    assert eq.torsion(3, -9) == (1,)


def test_figure_eight(cat):
    h = khovanov_homology(cat["4_1"])
    assert h == free([(-2, 5), (-1, 1), (0, 1), (0, -1), (1, -1), (2, -5)])
    assert h.total_rank() == 6


@pytest.mark.parametrize("name", ["3_1", "4_1", "5_2", "6_1", "7_4"])
def test_reduced_euler_characteristic(cat, name):
    d = cat[name]
    r = khovanov_homology(d, "reduced")
    assert khovanov_homology(d).euler() == (r.shifted(0, 1) + r.shifted(0, -1)).euler()


@pytest.mark.parametrize("name, s", [("trefoil_rh", -2), ("3_1", 2), ("4_1", 0), ("unknot", 0)])
def test_s_invariant(cat, name, s):
    assert s_invariant(cat[name]) == s


@pytest.mark.parametrize("name", ["5_1", "7_2", "8_19", "conway"])
def test_s_flips_under_mirror(cat, name):
    d = cat[name]
    assert s_invariant(mirror(d)) == -s_invariant(d)


def test_krasner_shape():
    tc = krasner_twist_complex(2)
    assert [o[0] for o in tc.objects] == ["V", "V", "V", "V", "Z"]
    assert [o[2] for o in tc.objects] == [-1, -3, -5, -7, -8]
    assert tc.maps == ("x2-x4", "A", "x2-x4", "S")
    assert krasner_twist_complex(0).objects == (("Z", 0, 0),)
    assert krasner_q(2, 1) == -4
    with pytest.raises(ValueError):
        krasner_twist_complex(-1)


def test_frobenius_tables():
    f = frobenius_data(Theory("equivariant"))
    assert f["mult"][("X", "X")] == [(1, 1, "1")]
    assert frobenius_data(Theory())["mult"][("X", "X")] == []
    with pytest.raises(ValueError):
        Theory(n=3)


def _sites(d):
    return [TwistSite((a, b)) for f in d.faces() for (a, _) in f for (b, _) in f
            if a < b and site_is_antiparallel(d, TwistSite((a, b)))]


@pytest.mark.parametrize("flavor", ["unreduced", "reduced", "equivariant"])
@pytest.mark.parametrize("k", [0, 1, 2])
def test_splice_matches_inserted_twists(cat, flavor, k):
    d = cat["trefoil_rh"]
    for s in _sites(d):
        # pick a basepoint away from the site so both computations agree on it
        bp = next(e for e in d.edges if e not in s.edges)
        d0 = make_diagram(d.crossings, basepoint=bp)
        expected = khovanov_homology(insert_twists(d0, s, k), flavor)
        assert homology(splice(d0, s, k, flavor), flavor) == expected


def test_basepoint_on_site_rejected(cat):
    d = cat["trefoil_rh"]
    s = _sites(d)[0]
    d0 = make_diagram(d.crossings, basepoint=s.edges[0])
    with pytest.raises(DiagramError, match="basepoint"):
        splice(d0, s, 1, "reduced")


@pytest.mark.parametrize("flavor", ["unreduced", "equivariant"])
def test_F_and_G_are_chain_maps_with_exact_sequences(cat, flavor):
    d = cat["U_fig8"]
    for f in (map_F(d, None, 0, 1, flavor), map_G(d, None, 0, 1, flavor), map_F(d, None, 1, 2, flavor)):
        assert les_ranks(f).exact


def test_rescaled_saddle_breaks_F(cat):
    # S' = -S/3 no longer commutes with the identity part of F_{1,2}
    with pytest.raises(AssertionError):
        map_F(cat["U_fig8"], None, 1, 2, "unreduced", scale=Fraction(-1, 3))


def test_map_index_errors(cat):
    with pytest.raises(ValueError):
        map_F(cat["U_fig8"], None, 1, 1)
    with pytest.raises(DiagramError):
        map_G(cat["4_1"], None, 0, 1)
