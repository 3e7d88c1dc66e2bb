import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flat_systoles.covers import CutSpec, cyclic_cover, find_regular_cut, verify_cover
from flat_systoles.errors import InvalidCut
from flat_systoles.lengths import ExactLength
from flat_systoles.origami import parse_origami

from conftest import random_origamis

WITNESS4 = "sigma_a=(1,2)(3,4) sigma_b=(1,2,3,4)"


def test_k1_is_isomorphic(witness30):
    cut = find_regular_cut(witness30)
    assert cyclic_cover(witness30, cut, 1).is_isomorphic(witness30)


def test_torus_triple_cover(torus):
    cut = find_regular_cut(torus)
    assert cut.axis == "h" and cut.cycle == (0,)
    c = cyclic_cover(torus, cut, 3)
    assert c.degree == 3 and c.genus == 1
    assert c.sigma_a.images == (0, 1, 2) and c.sigma_b.cycles() == [(0, 1, 2)]
    assert verify_cover(torus, c, 3).ok


def test_torus_double_cover_genus(torus):
    c = cyclic_cover(torus, find_regular_cut(torus), 2)
    assert c.genus == 2 * 0 + 1


def test_degree4_witness_double_cover():
    o = parse_origami(WITNESS4)
    cover = cyclic_cover(o, find_regular_cut(o), 2)
    assert cover.degree == 8 and cover.genus == 3
    assert str(cover.stratum) == "H(1,1,1,1)"
    rep = verify_cover(o, cover, 2)
    assert rep.ok and not (rep.cover_systole < ExactLength.sqrt(2))


def test_witness30_double_cover(witness30):
    cut = find_regular_cut(witness30)
    cover = cyclic_cover(witness30, cut, 2)
    rep = verify_cover(witness30, cover, 2)
    assert rep.cover_genus == 3 and rep.cover_stratum == "H(1,1,1,1)"
    assert rep.ok and not (rep.cover_systole < ExactLength.sqrt(17))


def test_l_origami_needs_a_core_cut(l_origami):
    # its only lattice point is the cone point, so every grid line hits it
    cut = find_regular_cut(l_origami)
    assert cut == CutSpec("h", (2,), "core")
    with pytest.raises(InvalidCut):
        cyclic_cover(l_origami, CutSpec("h", (2,), "edge"), 2)
    for k in (2, 3):
        rep = verify_cover(l_origami, cyclic_cover(l_origami, cut, k), k)
        assert rep.ok and rep.cover_stratum == "H(" + ",".join(["2"] * k) + ")"


def test_edge_and_core_give_the_same_cover():
    edges = 0
    for o in random_origamis(40, max_degree=10, seed=62):
        cut = find_regular_cut(o)
        if cut.placement != "edge":
            continue
        edges += 1
        core = CutSpec(cut.axis, cut.cycle, "core")
        assert cyclic_cover(o, cut, 3) == cyclic_cover(o, core, 3)
    assert edges > 5


def test_invalid_cuts(witness30):
    sing = next(iter(witness30.singularity_of_square))
    bad = [c for c in witness30.sigma_a.cycles(include_fixed=True) if sing in c][0]
    with pytest.raises(InvalidCut):
        cyclic_cover(witness30, CutSpec("h", bad), 2)
    with pytest.raises(InvalidCut):
        cyclic_cover(witness30, CutSpec("h", ()), 2)
    with pytest.raises(ValueError):
        cyclic_cover(witness30, find_regular_cut(witness30), 0)


def test_edge_cuts_avoid_cone_points():
    for o in random_origamis(30, max_degree=9, seed=61):
        cut = find_regular_cut(o)
        if cut.placement == "edge":
            assert not any(i in o.singularity_of_square for i in cut.cycle)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 4))
def test_cover_relations_without_systoles(seed, k):
    (o,) = random_origamis(1, max_degree=10, seed=seed)
    cut = find_regular_cut(o)
    # construction raises if the result were disconnected
    cover = cyclic_cover(o, cut, k)
    rep = verify_cover(o, cover, k, with_systoles=False)
    assert rep.genus_ok and rep.stratum_ok
