"""Exhaustive enumeration of origamis in a stratum and the maximal systolic ratio.

``sigma_a`` runs over one representative per cycle type and ``sigma_b`` over
all of ``S_n``.  Candidates are filtered in numpy blocks: commutator
moved-point count, commutator cycle type, transitivity.  Survivors are
reduced to canonical forms (the same labelling as ``canonical_form``) and
deduplicated before the systole pipeline runs on each class once.
"""

from __future__ import annotations

import csv
import io
import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .bounds import audit
from .lengths import ExactLength
from .origami import Origami, Permutation, Stratum
from .systole import consistency_violations, l0_bound, systole

BASE_MAX = 8


def partitions(n: int, largest: int | None = None):
    """Integer partitions of ``n`` as nonincreasing tuples, in reverse lexicographic order."""
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def conjugacy_representatives(n: int) -> list[Permutation]:
    """One permutation per cycle type: cycles sorted descending, filled with consecutive points."""
    reps = []
    for part in partitions(n):
        cycles, start = [], 0
        for length in part:
            cycles.append(tuple(range(start, start + length)))
            start += length
        reps.append(Permutation.from_cycles(cycles, n))
    return reps


def _perm_block(m: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(m))), dtype=np.int8)


def _blocks(n: int):
    """All permutations of ``range(n)`` as int8 arrays, in blocks."""
    m = min(n, BASE_MAX)
    base = _perm_block(m)
    k = n - m
    for prefix in itertools.permutations(range(n), k):
        rest = np.array([x for x in range(n) if x not in prefix], dtype=np.int8)
        block = rest[base]
        if k:
            pre = np.broadcast_to(np.array(prefix, dtype=np.int8), (len(base), k))
            block = np.concatenate([pre, block], axis=1)
        yield block


def _take(p: np.ndarray, idx: np.ndarray) -> np.ndarray:
    """Row-wise composition ``p o idx``."""
    return np.take_along_axis(p, idx.astype(np.intp), axis=1)


def _inverse_rows(p: np.ndarray) -> np.ndarray:
    return np.argsort(p, axis=1).astype(np.int8)


def _cycle_lengths(c: np.ndarray, maxlen: int) -> np.ndarray:
    """Length of the cycle of each point (0 where longer than ``maxlen``)."""
    ident = np.arange(c.shape[1], dtype=np.int8)
    lengths = np.zeros(c.shape, dtype=np.int8)
    p = c.copy()
    for j in range(1, maxlen + 1):
        hit = (p == ident) & (lengths == 0)
        lengths[hit] = j
        p = _take(c, p)
    return lengths


def _transitive_rows(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Boolean mask of rows where <a, b> is transitive (a is one permutation, b rows)."""
    m, n = b.shape
    ainv = np.argsort(a)
    binv = _inverse_rows(b)
    reach = np.zeros((m, n), dtype=bool)
    reach[:, 0] = True
    for _ in range(n):
        new = reach | reach[:, ainv] | np.take_along_axis(reach, binv.astype(np.intp), axis=1)
        if np.array_equal(new, reach):
            break
        reach = new
    return reach.all(axis=1)


def canonical_rows(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Canonical forms of many pairs at once: rows of ``concat(a', b')``.

    ``a`` and ``b`` are (m, n) arrays of transitive pairs.
    """
    m, n = a.shape
    rows = np.arange(m)
    best = None
    for start in range(n):
        label = np.full((m, n), -1, dtype=np.int16)
        order = np.zeros((m, n), dtype=np.int16)
        label[:, start] = 0
        order[:, 0] = start
        nxt = np.ones(m, dtype=np.int16)
        for pos in range(n):
            x = order[:, pos]
            for perm in (a, b):
                y = perm[rows, x]
                new = label[rows, y] < 0
                r = rows[new]
                label[r, y[new]] = nxt[new]
                order[r, nxt[new]] = y[new]
                nxt = nxt + new
        na = np.take_along_axis(label, np.take_along_axis(a, order.astype(np.intp), axis=1).astype(np.intp), axis=1)
        nb = np.take_along_axis(label, np.take_along_axis(b, order.astype(np.intp), axis=1).astype(np.intp), axis=1)
        key = np.concatenate([na, nb], axis=1).astype(np.int8)
        if best is None:
            best = key
            continue
        diff = key != best
        first = diff.argmax(axis=1)
        smaller = diff.any(axis=1) & (key[rows, first] < best[rows, first])
        best[smaller] = key[smaller]
    return best


def _stratum_target(n: int, k: Stratum) -> tuple[int, np.ndarray]:
    moved = sum(x + 1 for x in k.orders)
    lengths = sorted([x + 1 for x in k.orders for _ in range(x + 1)] + [1] * (n - moved))
    return moved, np.array(lengths, dtype=np.int8)


def _filter_rep(a_images: tuple[int, ...], k: Stratum) -> tuple[int, np.ndarray]:
    """(number of passing labelled sigma_b, unique canonical rows) for one sigma_a."""
    n = len(a_images)
    a = np.array(a_images, dtype=np.int8)
    ainv = np.argsort(a).astype(np.int8)
    moved, target = _stratum_target(n, k)
    maxlen = max(k.orders) + 1
    ident = np.arange(n, dtype=np.int8)
    passed = 0
    uniq: list[np.ndarray] = []
    seen: set[bytes] = set()
    for b in _blocks(n):
        binv = _inverse_rows(b)
        # c = a b a^-1 b^-1, computed as a[b[ainv[binv]]]
        c = a[_take(b, ainv[binv])]
        keep = (c != ident).sum(axis=1) == moved
        if not keep.any():
            continue
        b, c = b[keep], c[keep]
        lengths = _cycle_lengths(c, maxlen)
        keep = (np.sort(lengths, axis=1) == target).all(axis=1)
        if not keep.any():
            continue
        b = b[keep]
        keep = _transitive_rows(a, b)
        b = b[keep]
        if not len(b):
            continue
        passed += len(b)
        canon = canonical_rows(np.broadcast_to(a, b.shape).copy(), b)
        canon = np.unique(canon, axis=0)
        for row in canon:
            key = row.tobytes()
            if key not in seen:
                seen.add(key)
                uniq.append(row)
    if not uniq:
        return passed, np.zeros((0, 2 * n), dtype=np.int8)
    arr = np.array(uniq)
    order = np.lexsort(arr.T[::-1])
    return passed, arr[order]


def enumerate_stratum(n: int, k: Stratum, dedup: bool = True):
    """Yield origamis of degree ``n`` in stratum ``k``, one per isomorphism class.

    Canonical-form deduplication is always applied; ``dedup`` only chooses
    whether to report labelled counts or classes (see ``max_sr``).
    """
    for rep in conjugacy_representatives(n):
        _, rows = _filter_rep(rep.images, k)
        for row in rows:
            yield Origami.from_images(tuple(int(x) for x in row[:n]), tuple(int(x) for x in row[n:]))


@dataclass
class OrigamiResult:
    canonical: tuple
    graph_systole: ExactLength
    systole: ExactLength
    definitive: bool
    escalated: bool
    audit_ok: bool
    violations: list[str]


def process_origami(o: Origami) -> OrigamiResult:
    rep = systole(o)
    b = audit(o, rep.sr)
    viol = consistency_violations(o, rep) + [f"bound {c.name}" for c in b.violations()]
    return OrigamiResult(
        (o.sigma_a.images, o.sigma_b.images),
        rep.graph_systole,
        rep.systole,
        rep.definitive,
        rep.escalated,
        b.ok,
        viol,
    )


@dataclass
class EnumerationRecord:
    degree: int
    stratum: str
    labelled: int
    classes: int
    processed: int
    max_graph_systole: ExactLength | None
    max_systole: ExactLength | None
    witness: Origami | None
    audit_failures: int = 0
    consistency_failures: int = 0
    escalations: int = 0
    unresolved: int = 0
    pruned: int = 0
    dedup: bool = True
    wall_time: float = field(default=0.0, compare=False)
    violation_samples: list[str] = field(default_factory=list)

    @property
    def examined(self) -> int:
        return self.classes if self.dedup else self.labelled

    @staticmethod
    def _sr(sy: ExactLength | None, n: int):
        if sy is None:
            return None
        sq = sy.squared().rational()
        return Fraction(sq) / n if sq is not None else float(sy.squared()) / n

    @property
    def max_sr(self):
        return self._sr(self.max_graph_systole, self.degree)

    @property
    def max_sr_filtered(self):
        return self._sr(self.max_systole, self.degree)

    def row(self) -> dict:
        sr = self.max_sr
        srf = self.max_sr_filtered
        return {
            "n": self.degree,
            "sy": str(self.max_graph_systole) if self.max_graph_systole is not None else "",
            "sr": f"{float(sr):.12g}" if sr is not None else "",
            "sy_squared": str(self.max_graph_systole.squared()) if self.max_graph_systole is not None else "",
            "sr_exact": str(sr) if sr is not None else "",
            "sy_filtered": str(self.max_systole) if self.max_systole is not None else "",
            "sr_filtered": f"{float(srf):.12g}" if srf is not None else "",
            "stratum": self.stratum,
            "examined": self.examined,
            "processed": self.processed,
            "pruned": self.pruned,
            "escalations": self.escalations,
            "unresolved": self.unresolved,
            "audit_failures": self.audit_failures,
            "consistency_failures": self.consistency_failures,
            "audit": "pass" if self.audit_failures == 0 and self.consistency_failures == 0 else "FAIL",
            "witness_sigma_a": self.witness.sigma_a.to_cycle_string() if self.witness else "",
            "witness_sigma_b": self.witness.sigma_b.to_cycle_string() if self.witness else "",
        }


CSV_FIELDS = list(EnumerationRecord(0, "", 0, 0, 0, None, None, None).row().keys())


def to_csv(records, header: bool = True) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    if header:
        w.writeheader()
    for r in records:
        w.writerow(r.row())
    return buf.getvalue()


def _work(args):
    a_images, orders, prune_above = args
    k = Stratum(orders)
    n = len(a_images)
    labelled, rows = _filter_rep(a_images, k)
    results = []
    pruned = 0
    best_sq = prune_above
    for row in rows:
        o = Origami.from_images(tuple(int(x) for x in row[:n]), tuple(int(x) for x in row[n:]))
        if best_sq is not None and l0_bound(o) ** 2 <= best_sq:
            pruned += 1
            continue
        r = process_origami(o)
        if best_sq is not None:
            sq = float(r.graph_systole.squared())
            best_sq = max(best_sq, sq) if best_sq >= 0 else sq
        results.append(r)
    return labelled, len(rows), results, pruned


def max_sr(n: int, k: Stratum, threads: int = 1, prune: bool = False, dedup: bool = True) -> EnumerationRecord:
    """Maximal graph systole (and ratio) over all degree-``n`` origamis in ``k``.

    With ``prune`` an origami is skipped once ``l0_bound^2`` cannot beat the
    best squared systole found so far in its shard; skipped origamis are not
    audited.
    """
    t0 = time.perf_counter()
    reps = conjugacy_representatives(n)
    jobs = [(r.images, tuple(k.orders), (-1.0 if prune else None)) for r in reps]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            parts = list(ex.map(_work, jobs))
    else:
        parts = [_work(j) for j in jobs]
    rec = EnumerationRecord(n, str(k), 0, 0, 0, None, None, None, dedup=dedup)
    best_key = None
    best_f = None
    for labelled, classes, results, pruned in parts:
        rec.labelled += labelled
        rec.classes += classes
        rec.pruned += pruned
        for r in results:
            rec.processed += 1
            rec.escalations += r.escalated
            rec.unresolved += not r.definitive
            if not r.audit_ok:
                rec.audit_failures += 1
            cons = [v for v in r.violations if not v.startswith("bound")]
            if cons:
                rec.consistency_failures += 1
            if r.violations and len(rec.violation_samples) < 10:
                rec.violation_samples.append(f"{r.canonical}: {r.violations}")
            if best_key is None or best_key[0] < r.graph_systole or (
                r.graph_systole == best_key[0] and r.canonical < best_key[1]
            ):
                best_key = (r.graph_systole, r.canonical)
            if best_f is None or best_f < r.systole:
                best_f = r.systole
    if best_key is not None:
        rec.max_graph_systole = best_key[0]
        rec.witness = Origami.from_images(*best_key[1])
        rec.max_systole = best_f
    rec.wall_time = time.perf_counter() - t0
    return rec
