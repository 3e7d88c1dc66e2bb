import itertools
from fractions import Fraction

import numpy as np
import pytest

from flat_systoles.enumeration import (
    CSV_FIELDS,
    canonical_rows,
    conjugacy_representatives,
    enumerate_stratum,
    max_sr,
    partitions,
    process_origami,
    to_csv,
)
from flat_systoles.lengths import ExactLength
from flat_systoles.origami import Origami, Stratum, canonical_form

from conftest import random_origamis


def brute_classes(n, k):
    """All transitive pairs in S_n x S_n of stratum k, up to simultaneous conjugation."""
    out = set()
    for a in itertools.permutations(range(n)):
        for b in itertools.permutations(range(n)):
            try:
                o = Origami.from_images(a, b)
            except ValueError:
                continue
            if o.stratum == k:
                out.add(canonical_form(a, b))
    return out


def test_partition_counts():
    assert [len(list(partitions(n))) for n in (3, 4, 8)] == [3, 5, 22]
    assert list(partitions(3)) == [(3,), (2, 1), (1, 1, 1)]


def test_representatives_have_every_cycle_type():
    reps = conjugacy_representatives(6)
    types = {tuple(sorted((len(c) for c in r.cycles(include_fixed=True)), reverse=True)) for r in reps}
    assert types == set(partitions(6))


def test_degree3():
    assert list(enumerate_stratum(3, Stratum((1, 1)))) == []
    h2 = list(enumerate_stratum(3, Stratum((2,))))
    l_shape = Origami.from_images((1, 0, 2), (2, 1, 0))
    assert any(o.is_isomorphic(l_shape) for o in h2)


@pytest.mark.parametrize("n,k", [(3, (2,)), (4, (2,)), (4, (1, 1)), (5, (1, 1)), (5, (2,))])
def test_classes_match_brute_force(n, k):
    k = Stratum(k)
    got = {(o.sigma_a.images, o.sigma_b.images) for o in enumerate_stratum(n, k)}
    assert got == brute_classes(n, k)


def test_canonical_rows_agree_with_canonical_form():
    corpus = [o for o in random_origamis(150, max_degree=8, min_degree=6, seed=71) if o.degree == 7]
    a = np.array([o.sigma_a.images for o in corpus], dtype=np.int8)
    b = np.array([o.sigma_b.images for o in corpus], dtype=np.int8)
    rows = canonical_rows(a, b)
    for o, row in zip(corpus, rows):
        ca, cb = canonical_form(o.sigma_a.images, o.sigma_b.images)
        assert tuple(int(x) for x in row) == ca + cb


def test_small_rows():
    r4 = max_sr(4, Stratum((1, 1)))
    assert r4.max_graph_systole == ExactLength.sqrt(2) and r4.max_sr == Fraction(1, 2)
    assert r4.classes == 10
    w = r4.witness
    assert process_origami(w).graph_systole == ExactLength.sqrt(2)
    r5 = max_sr(5, Stratum((1, 1)))
    assert r5.max_sr == Fraction(2, 5)
    for r in (r4, r5):
        assert r.audit_failures == r.consistency_failures == r.unresolved == 0
        assert r.processed == r.classes


def test_prune_keeps_the_maximum():
    a = max_sr(6, Stratum((1, 1)))
    b = max_sr(6, Stratum((1, 1)), prune=True)
    assert a.max_graph_systole == b.max_graph_systole == ExactLength.sqrt(2)
    assert b.pruned + b.processed == a.processed


def test_dedup_only_changes_the_count():
    a = max_sr(5, Stratum((1, 1)), dedup=False)
    b = max_sr(5, Stratum((1, 1)), dedup=True)
    assert a.row()["examined"] == a.labelled > b.row()["examined"] == b.classes
    assert a.max_sr == b.max_sr


def test_csv_output():
    text = to_csv([max_sr(4, Stratum((1, 1)))])
    header, line = text.strip().split("\n")
    assert header.split(",") == CSV_FIELDS
    assert line.startswith("4,sqrt2,0.5,2,1/2,")


def test_threads_do_not_change_the_result():
    assert max_sr(5, Stratum((1, 1)), threads=2).row() == max_sr(5, Stratum((1, 1))).row()
