from concurrent.futures import ThreadPoolExecutor

import pytest

from twistkh.diagram import DiagramError, TwistSite
from twistkh.twiststruct import (
    PreconditionError, TwistFamily, check_nonvanishing, check_sn_constancy, delta_shift,
    extract_delta, isomorphic_pair_check, predict, unknot_homology, verify_ladders,
    verify_splitting, verify_stab_ranges,
)


@pytest.fixture
def fig8(cat):
    return lambda flavor="reduced": TwistFamily(cat["U_fig8"], None, flavor)


def test_family_members(fig8, cat):
    fam = fig8("unreduced")
    assert fam.base_is_unknot()
    assert fam.homology(1) == fam.homology(1, method="expand")
    assert fam.homology(1).total_rank() == 6
    # K_-1 is the left trefoil: p < 0 always expands
    assert fam.homology(-1) == TwistFamily(cat["U_fig8"], None, "unreduced").homology(-1, method="expand")
    assert fam.homology(-1).total_rank() == 4
    with pytest.raises(ValueError):
        fam.homology(1, method="bogus")


@pytest.mark.parametrize("flavor", ["reduced", "unreduced", "equivariant"])
def test_splice_and_expand_agree_up_to_three_twists(fig8, flavor):
    fam = fig8(flavor)
    for p in range(4):
        assert fam.homology(p) == fam.homology(p, method="expand")


def test_delta_of_figure_eight(fig8):
    # over Q, Kh(4_1) has rank 6, so removing the unknot leaves rank 4
    assert extract_delta(fig8("unreduced")).total_rank() == 4
    assert extract_delta(fig8("reduced")).total_rank() == 4
    assert extract_delta(fig8("equivariant")).module.is_torsion()


def test_delta_shift_rules():
    assert delta_shift(2) == (2, -4)
    assert delta_shift(3, rule="statement") == (6, -8)
    with pytest.raises(ValueError):
        delta_shift(2, rule="other")


@pytest.mark.parametrize("flavor", ["reduced", "unreduced", "equivariant"])
def test_splitting_with_derived_shift(fig8, flavor):
    fam = fig8(flavor)
    rep = verify_splitting(fam, 3, expand=True)
    assert rep["pass"] is True
    assert all(r["expand_agrees"] for r in rep["rows"])
    literal = verify_splitting(fam, 3, rule="statement")
    assert literal["pass"] is False
    assert literal["rows"][0]["mismatches"]


def test_splitting_precondition_reported(cat):
    fam = TwistFamily(cat["U_clasp_pos"])
    rep = verify_splitting(fam, 3)
    assert rep["pass"] is None and rep["hypothesis"] is False
    assert rep["undetermined_degrees"] == {"2": 2, "3": 4}
    with pytest.raises(PreconditionError):
        extract_delta(fam)
    with pytest.raises(ValueError):
        predict(TwistFamily(cat["U_fig8"]), extract_delta(TwistFamily(cat["U_fig8"])), 0)


def test_stab_ranges(fig8, cat):
    rep = verify_stab_ranges(fig8("reduced"), 1, 2)
    assert rep["pass"]
    # unreduced: G_{i,j} is not an isomorphism at h = c_+ = 0 for this base
    rep = verify_stab_ranges(fig8("unreduced"), 1, 2)
    assert rep["F"]["pass"] and rep["G"]["les_exact"]
    assert rep["G"]["failing_degrees"] == [0]
    assert verify_stab_ranges(TwistFamily(cat["U_clasp_pos"], None, "equivariant"), 1, 2)["pass"]


def test_ladders(fig8):
    rep = verify_ladders(fig8("reduced"), 3)
    assert rep["pass"]
    eq = verify_ladders(fig8("equivariant"), 3)
    assert all(r["F_exact"] and r["G_exact"] and r["F_cone_translation"] and r["G_cone_constant"]
               for r in eq["rows"])
    assert eq["M_torsion"] is True
    # N carries a free summand, so the all-torsion claim fails for it
    assert eq["N_torsion"] is False and eq["pass"] is False
    with pytest.raises(ValueError):
        verify_ladders(fig8(), 1)


def test_s_constancy_and_nonvanishing(fig8, cat):
    rep = check_sn_constancy(fig8(), 3)
    assert rep["pass"] and set(rep["s2"].values()) == {0}
    clasp = TwistFamily(cat["U_clasp_pos"])
    assert set(check_sn_constancy(clasp, 3)["s2"].values()) == {-2}
    nv = check_nonvanishing(fig8(), 3)
    assert nv["hypothesis"] and nv["pass"]
    assert nv["ladder_crosscheck"]["nonzero"]
    assert check_nonvanishing(clasp, 2)["pass"] is None


def test_pair_check_on_identical_families(fig8):
    rep = isomorphic_pair_check(fig8(), fig8(), 2, expand=True)
    assert rep["pass"]


def test_pair_check_hypothesis_failure(fig8, cat):
    rep = isomorphic_pair_check(fig8(), TwistFamily(cat["U_clasp_pos"]), 2)
    assert rep["pass"] is None


def test_bad_sites(cat):
    with pytest.raises(DiagramError):
        TwistFamily(cat["4_1"])
    with pytest.raises(DiagramError):
        TwistFamily(cat["U_fig8"], TwistSite((1, 2)))


def test_memo_is_thread_safe(cat):
    fam = TwistFamily(cat["U_fig8"], None, "unreduced")
    with ThreadPoolExecutor(4) as pool:
        out = list(pool.map(lambda p: fam.homology(p % 3), range(12)))
    assert out[0] is out[3] is out[9]
    assert unknot_homology("reduced").total_rank() == 1
