import json

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from twistkh.algebra import POLY, RATIONALS, GradedSparseMatrix
from twistkh.complex import (
    BigradedHomology, ChainComplex, ChainMap, ExactnessError, cone, homology, les_ranks, simplify,
)
from twistkh.khovanov import cube


def _identity(c):
    comps = {}
    for h, qs in c.gens.items():
        comps[h] = GradedSparseMatrix.from_entries(c.ring, qs, qs, {(i, i): 1 for i in range(len(qs))})
    return ChainMap(c, c, comps)


@pytest.mark.parametrize("flavor", ["unreduced", "reduced", "equivariant"])
def test_cone_of_identity_is_acyclic(cat, flavor):
    c = cube(cat["trefoil_rh"], flavor)
    co = cone(_identity(c))
    co.check()
    assert not homology(co)
    assert not homology(co, reduce=False)


@pytest.mark.parametrize("name", ["3_1", "4_1", "5_2", "U_fig8"])
@pytest.mark.parametrize("flavor", ["unreduced", "equivariant"])
def test_simplify_preserves_homology(cat, name, flavor):
    c = cube(cat[name], flavor)
    s = simplify(c)
    assert s.size() <= c.size()
    s.check()
    assert homology(c, reduce=False) == homology(s, reduce=False)


def _random_complex(draw):
    # direct sum of free survivors and cancelling pairs, then a change of basis
    lo = draw(st.integers(-2, 0))
    length = draw(st.integers(1, 4))
    free = {h: draw(st.integers(0, 2)) for h in range(lo, lo + length + 1)}
    pairs = {h: draw(st.integers(0, 2)) for h in range(lo, lo + length)}
    gens = {h: free[h] + pairs.get(h, 0) + pairs.get(h - 1, 0) for h in free}
    diffs = {}
    for h in pairs:
        m = sympy.zeros(gens[h + 1], gens[h])
        for k in range(pairs[h]):
            m[free[h + 1] + k, free[h] + pairs.get(h - 1, 0) + k] = 1
        diffs[h] = m
    basis = {}
    for h, n in gens.items():
        p = sympy.eye(n)
        for i in range(n):
            for j in range(i + 1, n):
                p[i, j] = draw(st.integers(-2, 2))
        basis[h] = p
    out = {}
    for h, m in diffs.items():
        m = basis[h + 1] * m * basis[h].inv()
        out[h] = GradedSparseMatrix.from_entries(
            RATIONALS, [0] * gens[h + 1], [0] * gens[h],
            {(i, j): m[i, j] for i in range(m.rows) for j in range(m.cols) if m[i, j]})
    expected = BigradedHomology.from_free({(h, 0): n for h, n in free.items()})
    return ChainComplex(RATIONALS, {h: [0] * n for h, n in gens.items()}, out), expected


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_homology_of_disguised_sums(data):
    c, expected = _random_complex(data.draw)
    assert homology(c) == expected
    assert homology(c, reduce=False) == expected


def test_torsion_over_poly():
    # R{8} --a^2--> R{0}, plus a free R{2} in degree 1
    d = GradedSparseMatrix.from_entries(POLY, [0, 2], [8], {(0, 0): 1})
    c = ChainComplex(POLY, {-1: [8], 0: [0, 2]}, {-1: d})
    h = homology(c)
    assert h.flavor == "equivariant"
    assert h.torsion(0, 0) == (2,)
    assert h.free(0, 2) == 1
    assert not h.is_torsion()
    assert h.torsion_part().is_torsion()
    # Q-dimensions: a^0 x and a^1 x survive, a^2 x dies
    assert [h.dim(0, q) for q in (0, 4, 8)] == [1, 1, 0]


def test_d_squared_detected():
    one = GradedSparseMatrix.from_entries(RATIONALS, [0], [0], {(0, 0): 1})
    with pytest.raises(AssertionError, match="d o d"):
        ChainComplex(RATIONALS, {0: [0], 1: [0], 2: [0]}, {0: one, 1: one})


def test_chain_map_check():
    one = GradedSparseMatrix.from_entries(RATIONALS, [0], [0], {(0, 0): 1})
    a = ChainComplex(RATIONALS, {0: [0], 1: [0]}, {0: one})
    b = ChainComplex(RATIONALS, {0: [0], 1: [0]}, {})
    # commuting fails: f d != d f
    with pytest.raises(AssertionError):
        ChainMap(a, b, {0: one, 1: one.scaled(2)})


def test_les_exact_on_a_map_and_flags_failures():
    one = GradedSparseMatrix.from_entries(RATIONALS, [0], [0], {(0, 0): 1})
    a = ChainComplex(RATIONALS, {1: [0]})
    b = ChainComplex(RATIONALS, {0: [0], 1: [0]}, {0: one})
    rep = les_ranks(ChainMap(a, b, {1: one}))
    assert rep.exact
    # H(A) = Q in degree 1 and H(B) = 0, so the cone carries Q in degree 0
    assert rep.cone_homology_dims() == {(0, 0): 1}
    assert rep.rows[(0, 0)][5] == 1
    assert json.loads(json.dumps(rep.to_json_obj()))["exact"] is True
    assert issubclass(ExactnessError, AssertionError)


def test_bigraded_arithmetic_and_json():
    a = BigradedHomology({(0, 1): (1, ()), (0, -1): (1, ())}, "unreduced")
    b = a.shifted(2, -4)
    assert b.free(2, -3) == 1
    s = a + b
    assert s - b == a
    with pytest.raises(ValueError):
        a - b
    assert s.restrict(0, 0) == a
    assert s.euler() == {1: 1, -1: 1, -3: 1, -5: 1}
    assert s.poincare() == "q^(-1) + q + t^2q^(-5) + t^2q^(-3)"
    obj = json.loads(s.to_json())
    assert obj["groups"][0] == {"h": 0, "q": -1, "free": 1, "torsion": []}
    with pytest.raises(ValueError):
        BigradedHomology({(0, 0): (-1, ())})
