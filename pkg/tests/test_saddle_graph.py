import json
from collections import Counter

import pytest

from flat_systoles.errors import EmptyGraph, NoSingularities
from flat_systoles.lengths import ExactLength
from flat_systoles.saddle_graph import (
    direction_set,
    graph_in_direction,
    horizontal_graph,
    squares_on_singular_lines,
    trace_graph_in_direction,
    union_graph,
)
from flat_systoles.sl2 import Direction

from conftest import random_origamis

R2 = ExactLength.sqrt(2)


def weights(g):
    return sorted(e.length for e in g.edges)


def ints(*xs):
    return sorted(ExactLength.integer(x) for x in xs)


FIG1 = {
    (1, 0): ints(1, 2, 3, 3),
    (0, 1): ints(1, 2, 2, 4),
    (1, 1): sorted([3 * R2, 3 * R2, 4 * R2, 5 * R2]),
    (-1, 1): sorted([2 * R2, 2 * R2, 3 * R2, 3 * R2]),
}


@pytest.mark.parametrize("v", list(FIG1))
@pytest.mark.parametrize("build", [graph_in_direction, trace_graph_in_direction])
def test_worked15_direction_graphs(worked15, v, build):
    g = build(worked15, v)
    assert weights(g) == FIG1[v]
    assert len(g.vertices) == 2


def test_worked15_minus_diagonal_is_all_loops(worked15):
    assert all(e.is_loop for e in trace_graph_in_direction(worked15, (-1, 1)).edges)


def test_worked15_horizontal(worked15):
    assert weights(horizontal_graph(worked15)) == FIG1[(1, 0)]
    assert horizontal_graph(worked15).signature_multiset() == trace_graph_in_direction(worked15, (1, 0)).signature_multiset()


def test_worked15_union(worked15):
    g = union_graph(worked15, direction_set(2))
    assert len(g.edges) == 16
    between = sorted(e.length for e in g.edges if not e.is_loop)
    loops = sorted(e.length for e in g.edges if e.is_loop)
    assert between == sorted(ints(1, 1, 2, 2, 2, 4) + [4 * R2, 5 * R2])
    assert loops == sorted(ints(3, 3) + [3 * R2] * 4 + [2 * R2] * 2)


def test_l_origami_horizontal(l_origami):
    # sa = (1 2) fixes 3; every corner is the single cone point, so each
    # horizontal step from a square ends at the cone point again
    g = horizontal_graph(l_origami)
    assert weights(g) == ints(1, 1, 1)
    assert all(e.is_loop for e in g.edges)
    assert g.signature_multiset() == trace_graph_in_direction(l_origami, (1, 0)).signature_multiset()


def test_witness30_has_sqrt17_loop(witness30):
    g = trace_graph_in_direction(witness30, (1, 4))
    assert any(e.is_loop and e.length == ExactLength.sqrt(17) for e in g.edges)


def test_torus_has_no_graph(torus):
    for build in (horizontal_graph, lambda o: graph_in_direction(o, (1, 1)), lambda o: trace_graph_in_direction(o, (0, 1))):
        with pytest.raises(NoSingularities):
            build(torus)


def test_direction_sets():
    as_t = lambda s: [d.as_tuple() for d in s]  # noqa: E731
    assert as_t(direction_set(1)) == [(1, 0), (0, 1)]
    assert as_t(direction_set(2)) == [(1, 0), (1, 1), (0, 1), (-1, 1)]
    assert set(as_t(direction_set(3))) == {(1, 0), (1, 1), (0, 1), (-1, 1), (2, 1), (1, 2), (-1, 2), (-2, 1)}
    assert as_t(direction_set(ExactLength.sqrt(2))) == as_t(direction_set(2))
    assert len(direction_set(ExactLength.sqrt(5))) == 8
    with pytest.raises(ValueError):
        direction_set(0)


def test_union_requires_directions(worked15):
    with pytest.raises(EmptyGraph):
        union_graph(worked15, [])


def test_union_single_direction_is_horizontal(worked15):
    assert union_graph(worked15, [(1, 0)]).signature_multiset() == horizontal_graph(worked15).signature_multiset()


def test_edge_count_and_weight_invariants():
    for o in random_origamis(60, max_degree=10, seed=19):
        h = horizontal_graph(o)
        assert len(h.edges) == len(o.singular_squares)
        assert sum(e.steps for e in h.edges) == squares_on_singular_lines(o)
        for v in direction_set(3):
            g = trace_graph_in_direction(o, v)
            assert len(g.edges) == len(o.singular_squares)
            for e in g.edges:
                assert e.length_squared == e.steps ** 2 * v.norm2
                assert e.length == e.steps * ExactLength.sqrt(v.norm2)


def test_routes_agree_small_corpus():
    for o in random_origamis(50, max_degree=9, seed=23):
        for v in direction_set(4):
            assert graph_in_direction(o, v).signature_multiset() == trace_graph_in_direction(o, v).signature_multiset()


def test_anchor_vectors_match_direction(witness30):
    for v in direction_set(4):
        for e in trace_graph_in_direction(witness30, v).edges:
            assert e.start_anchor.vector == v.as_tuple()
            assert e.end_anchor.vector == (-v.x, -v.y)


def test_exports(worked15):
    g = union_graph(worked15, direction_set(2))
    data = json.loads(g.dumps("json"))
    assert len(data["edges"]) == 16
    assert data["edges"][0]["start_anchor"]["corner"] in {"LL", "LR"}
    dot = g.dumps("dot")
    assert dot.startswith("graph") and dot.count("--") == 16
    assert Counter(e["direction"][1] for e in data["edges"])[0] == 4
    assert g.directions[0] == Direction(1, 0)
