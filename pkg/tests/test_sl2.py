import random
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flat_systoles.errors import NotPrimitive
from flat_systoles.origami import Origami
from flat_systoles.sl2 import (
    IDENTITY,
    S,
    T,
    Direction,
    IntMatrix2,
    act,
    decompose,
    matrix_for_direction,
    word_product,
)

from conftest import random_origamis


def test_matrix_examples():
    assert matrix_for_direction((1, 0)) == IDENTITY
    assert matrix_for_direction((1, 1)).rows() == [[0, 1], [-1, 1]]
    assert matrix_for_direction((0, 1)).rows() == [[0, 1], [-1, 0]]


@pytest.mark.parametrize("v", [(2, 4), (0, 2), (1, -1), (-1, 0), (0, 0)])
def test_rejects_bad_directions(v):
    with pytest.raises(NotPrimitive):
        matrix_for_direction(v)


def test_det_checked():
    with pytest.raises(ValueError):
        IntMatrix2(1, 1, 1, 1)


def _primitive(xy):
    x, y = xy
    g = gcd(abs(x), y) or 1
    x, y = x // g, y // g
    if y == 0:
        x = 1
    return Direction(x, y)


directions = lambda: st.tuples(st.integers(-60, 60), st.integers(0, 60)).map(_primitive)  # noqa: E731


@settings(max_examples=300, deadline=None)
@given(directions())
def test_matrix_sends_v_to_horizontal(v):
    a = matrix_for_direction(v)
    assert a.det == 1
    assert a.apply((v.x, v.y)) == (1, 0)
    assert matrix_for_direction(v) == a


@settings(max_examples=300, deadline=None)
@given(directions())
def test_decompose_roundtrip(v):
    a = matrix_for_direction(v)
    word = decompose(a)
    assert word_product(word) == a
    assert set(word) <= {"T", "T-", "S"}


def test_word_length_small():
    # bounded by the partial quotients, far below |entries|
    a = matrix_for_direction((34, 55))
    assert len(decompose(a)) < 40


def test_generators_preserve_invariants():
    for o in random_origamis(40, max_degree=9, seed=11, singular=False):
        for g in (T, S, T.inverse()):
            p = act(g, o)
            assert p.degree == o.degree
            assert p.stratum == o.stratum


def test_s_four_times_is_identity_up_to_iso():
    for o in random_origamis(20, max_degree=8, seed=5):
        p = o
        for _ in range(4):
            p = act(S, p)
        assert p.is_isomorphic(o)


def test_t_shear_formula():
    o = Origami.from_images([1, 2, 0], [0, 2, 1])
    p = act(T, o)
    ainv = o.inverses[0]
    assert p.sigma_a == o.sigma_a
    assert p.sigma_b.images == tuple(o.sigma_b.images[ainv[i]] for i in range(3))


def test_action_is_a_group_action():
    rng = random.Random(1)
    mats = [T, S, T.inverse(), S @ T, T @ T @ S]
    for o in random_origamis(25, max_degree=8, seed=13):
        m1, m2 = rng.choice(mats), rng.choice(mats)
        assert act(m1 @ m2, o).is_isomorphic(act(m1, act(m2, o)))
