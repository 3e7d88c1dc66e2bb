"""Shortest closed reduced paths and the systole of an origami.

Pipeline for one origami:

1. ``l0 = improved_l0(O)``, an upper bound on the systole.
2. Build the graph on all primitive directions of norm at most ``l0``.
3. Its shortest closed reduced paths are the minimal candidates; screen each
   with the length-3 angle criterion.  If one survives, its weight is the
   systole.
4. Otherwise walk further candidates in nondecreasing weight (escalation):
   a nonzero developing sum proves a candidate is essential; zero-sum
   triangles with all angles below pi on one side are discarded; any other
   zero-sum candidate is left unresolved and the report is non-definitive.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import EmptyGraph, GenusOne
from .geometry import PathAngles, is_null_homotopic_minimal, path_angles
from .lengths import ExactLength
from .origami import Origami
from .saddle_graph import (
    EdgePath,
    SaddleEdge,
    SaddleGraph,
    direction_set,
    union_graph,
)

MAX_ESCALATION = 2000


def l0_bound(o: Origami) -> int:
    """Shortest horizontal or vertical cylinder circumference."""
    return min(min(o.sigma_a.cycle_type()), min(o.sigma_b.cycle_type()))


def _traversals(g: SaddleGraph):
    return g.incident()


def _dijkstra(g: SaddleGraph, src: int, skip: int | None = None) -> dict[int, ExactLength]:
    inc = _traversals(g)
    dist = {src: ExactLength()}
    heap = [(ExactLength(), 0, src)]
    tick = 1
    done = set()
    while heap:
        d, _, u = heapq.heappop(heap)
        if u in done:
            continue
        done.add(u)
        for e, fwd in inc[u]:
            if e.id == skip or e.is_loop:
                continue
            w = e.target if fwd else e.source
            nd = d + e.length
            if w not in dist or nd < dist[w]:
                dist[w] = nd
                heapq.heappush(heap, (nd, tick, w))
                tick += 1
    return dist


def graph_systole_value(g: SaddleGraph) -> ExactLength:
    """Weighted girth: loops, parallel pairs, and edge + detour over ``g - e``."""
    if not g.edges:
        raise EmptyGraph("graph has no edges")
    best = None

    def consider(w):
        nonlocal best
        if best is None or w < best:
            best = w

    by_pair: dict[tuple[int, int], list[SaddleEdge]] = {}
    for e in g.edges:
        if e.is_loop:
            consider(e.length)
        else:
            by_pair.setdefault((min(e.source, e.target), max(e.source, e.target)), []).append(e)
    for es in by_pair.values():
        if len(es) >= 2:
            ws = sorted(e.length for e in es)
            consider(ws[0] + ws[1])
        e = min(es, key=lambda x: x.length)
        dist = _dijkstra(g, e.source, skip=e.id)
        if e.target in dist:
            consider(e.length + dist[e.target])
    if best is None:
        raise EmptyGraph("graph is a forest; it has no closed reduced path")
    return best


def _simple_cycles_upto(g: SaddleGraph, bound: ExactLength, exact: bool) -> list[EdgePath]:
    """Simple cycles of weight <= bound (== bound when ``exact``), one per rotation/reversal class.

    Each cycle is generated starting from its lowest edge id, in both
    directions; the canonical representative removes the duplicate.
    """
    inc = _traversals(g)
    found: dict[tuple, EdgePath] = {}
    # distances avoiding nothing; used only as an admissible lower bound
    dists = {v: _dijkstra(g, v) for v in g.vertices}
    for first in sorted(g.edges, key=lambda e: e.id):
        if bound < first.length:
            continue
        for fwd in (True, False):
            start = first.source if fwd else first.target
            cur = first.target if fwd else first.source
            stack = [((first, fwd),)]
            weights = [first.length]
            visited = [frozenset([start, cur]) if cur != start else frozenset([start])]
            while stack:
                steps = stack.pop()
                w = weights.pop()
                seen = visited.pop()
                e_last, f_last = steps[-1]
                here = e_last.target if f_last else e_last.source
                if here == start:
                    if not exact or w == bound:
                        p = EdgePath(steps)
                        c = p.canonical()
                        found.setdefault(c.key(), c)
                    continue
                for e, f in inc[here]:
                    if e.id <= first.id or any(e.id == s[0].id for s in steps):
                        continue
                    nxt = e.target if f else e.source
                    if nxt != start and nxt in seen:
                        continue
                    nw = w + e.length
                    back = dists[nxt].get(start)
                    lower = nw if nxt == start or back is None else nw + back
                    if back is None and nxt != start:
                        continue
                    if bound < lower:
                        continue
                    stack.append(steps + ((e, f),))
                    weights.append(nw)
                    visited.append(seen | {nxt})
    return sorted(found.values(), key=EdgePath.sort_key)


def shortest_closed_reduced(g: SaddleGraph) -> tuple[ExactLength, list[EdgePath]]:
    """Minimum weight and every minimal closed reduced path (up to rotation/reversal)."""
    w = graph_systole_value(g)
    return w, _simple_cycles_upto(g, w, exact=True)


def k_shortest_closed_reduced(g: SaddleGraph, count: int, max_expansions: int = 200000) -> list[EdgePath]:
    """The first ``count`` primitive closed reduced paths by (weight, length, edge ids).

    Each class is searched from its lowest edge id; partial walks are
    expanded best-first, so completed walks come out in nondecreasing weight.
    Proper powers are skipped.
    """
    if not g.edges:
        raise EmptyGraph("graph has no edges")
    inc = _traversals(g)
    heap: list = []
    tick = 0
    for first in g.edges:
        for fwd in (True, False):
            heap.append((first.length, 1, tick, ((first, fwd),)))
            tick += 1
    heapq.heapify(heap)
    out: list[EdgePath] = []
    seen: set = set()
    batch: list[EdgePath] = []
    batch_w = None
    expansions = 0

    def flush():
        nonlocal batch
        for p in sorted(batch, key=EdgePath.sort_key):
            if len(out) < count:
                out.append(p)
        batch = []

    while heap and len(out) < count:
        w, length, _, steps = heapq.heappop(heap)
        if batch_w is not None and batch_w < w:
            flush()
            if len(out) >= count:
                break
        first, f0 = steps[0]
        start = first.source if f0 else first.target
        e_last, f_last = steps[-1]
        here = e_last.target if f_last else e_last.source
        if here == start:
            p = EdgePath(steps)
            if p.is_reduced(cyclic=True) and p.is_primitive():
                c = p.canonical()
                if c.key() not in seen:
                    seen.add(c.key())
                    batch.append(c)
                    batch_w = w
        expansions += 1
        if expansions > max_expansions:
            break
        for e, f in inc[here]:
            if e.id < first.id:
                continue
            if e.id == e_last.id and f != f_last:
                continue  # backtracking
            heapq.heappush(heap, (w + e.length, length + 1, tick, steps + ((e, f),)))
            tick += 1
    if len(out) < count:
        flush()
    return out[:count]


def improved_l0(o: Origami) -> ExactLength:
    """``min(l0_bound, graph systole of the horizontal + vertical graph)``."""
    if not o.singularities:
        raise GenusOne("origami has genus 1")
    g = union_graph(o, [(1, 0), (0, 1)])
    try:
        w = graph_systole_value(g)
    except EmptyGraph:
        return ExactLength.integer(l0_bound(o))
    b = ExactLength.integer(l0_bound(o))
    return w if w < b else b


@dataclass
class Candidate:
    path: EdgePath
    angles: PathAngles
    developing: tuple[int, int]
    verdict: str  # "essential", "null-homotopic", "unresolved"

    @property
    def weight(self) -> ExactLength:
        return self.path.weight

    def to_json(self) -> dict:
        return {
            "weight": str(self.weight),
            "value": self.weight.decimal(),
            "combinatorial_length": self.path.combinatorial_length,
            "edges": self.path.to_json(),
            "developing_sum": list(self.developing),
            "verdict": self.verdict,
            "angles": self.angles.to_json(),
        }


@dataclass
class SystoleReport:
    degree: int
    stratum: str
    genus: int
    l0: ExactLength
    num_directions: int
    num_edges: int
    graph_systole: ExactLength
    candidates: list[Candidate]
    systole: ExactLength
    systole_path: EdgePath | None
    escalated: bool = False
    definitive: bool = True
    unresolved: list[Candidate] = field(default_factory=list)
    rebuilds: int = 0

    @property
    def sy_squared(self) -> ExactLength:
        return self.systole.squared()

    @property
    def sr(self) -> Fraction | float:
        sq = self.sy_squared.rational()
        if sq is not None:
            return Fraction(sq) / self.degree
        return float(self.sy_squared) / self.degree

    @property
    def direction(self) -> tuple[int, int] | None:
        """The common direction when the systole is a single saddle connection."""
        if self.systole_path is None or self.systole_path.combinatorial_length != 1:
            return None
        return self.systole_path.steps[0][0].direction.as_tuple()

    def minimal_directions(self) -> list[list[int]]:
        """Directions of the single-edge essential minimal candidates."""
        out = []
        for c in self.candidates:
            if c.verdict == "essential" and c.path.combinatorial_length == 1:
                d = list(c.path.steps[0][0].direction.as_tuple())
                if d not in out:
                    out.append(d)
        return out

    def to_json(self, emit_candidates: bool = False) -> dict:
        sq = self.sy_squared.rational()
        sr = self.sr
        out = {
            "degree": self.degree,
            "stratum": self.stratum,
            "genus": self.genus,
            "l0": self.l0.to_json(),
            "num_directions": self.num_directions,
            "num_edges": self.num_edges,
            "graph_systole": self.graph_systole.to_json(),
            "systole": self.systole.to_json(),
            "sy_squared": int(sq) if sq is not None else str(self.sy_squared),
            "sr": str(sr) if isinstance(sr, Fraction) else None,
            "sr_value": f"{float(sr):.12g}",
            "direction": list(self.direction) if self.direction else None,
            "minimal_directions": self.minimal_directions(),
            "systole_path": self.systole_path.to_json() if self.systole_path else None,
            "escalated": self.escalated,
            "definitive": self.definitive,
            "rebuilds": self.rebuilds,
            "num_minimal_candidates": len(self.candidates),
            "unresolved": [c.to_json() for c in self.unresolved],
        }
        if emit_candidates:
            out["candidates"] = [c.to_json() for c in self.candidates]
        return out


def screen_minimal(o: Origami, p: EdgePath) -> Candidate:
    ang = path_angles(o, p)
    nh = is_null_homotopic_minimal(o, p, ang)
    return Candidate(p, ang, p.developing_sum(), "null-homotopic" if nh else "essential")


def _screen_escalated(o: Origami, p: EdgePath) -> Candidate:
    ang = path_angles(o, p)
    dev = p.developing_sum()
    if dev != (0, 0):
        verdict = "essential"
    elif p.combinatorial_length == 3 and (ang.all_left_below_pi() or ang.all_right_below_pi()):
        verdict = "null-homotopic"
    else:
        verdict = "unresolved"
    return Candidate(p, ang, dev, verdict)


def build_graph(o: Origami, l0) -> SaddleGraph:
    return union_graph(o, direction_set(l0), method="trace")


def systole(o: Origami, l0=None) -> SystoleReport:
    if not o.singularities:
        raise GenusOne("origami has genus 1 (no cone points); the graph method needs singularities")
    l0 = improved_l0(o) if l0 is None else ExactLength.coerce(l0)
    rebuilds = 0
    while True:
        g = build_graph(o, l0)
        w, paths = shortest_closed_reduced(g)
        cands = [screen_minimal(o, p) for p in paths]
        accepted = next((c for c in cands if c.verdict == "essential"), None)
        report = SystoleReport(
            degree=o.degree,
            stratum=str(o.stratum),
            genus=o.genus,
            l0=l0,
            num_directions=len(g.directions),
            num_edges=len(g.edges),
            graph_systole=w,
            candidates=cands,
            systole=w,
            systole_path=accepted.path if accepted else None,
            rebuilds=rebuilds,
        )
        if accepted is not None:
            return report
        report.escalated = True
        unresolved = []
        found = None
        for p in k_shortest_closed_reduced(g, MAX_ESCALATION):
            if p.weight < w:  # pragma: no cover
                raise AssertionError("escalation found a path shorter than the graph systole")
            c = _screen_escalated(o, p)
            if c.verdict == "essential":
                found = c
                break
            if c.verdict == "unresolved":
                unresolved.append(c)
        if found is None:
            raise EmptyGraph("no essential closed path found among escalation candidates")
        if l0 < found.weight:
            l0 = found.weight
            rebuilds += 1
            continue
        report.systole = found.weight
        report.systole_path = found.path
        report.unresolved = unresolved
        report.definitive = not unresolved
        return report


def consistency_violations(o: Origami, report: SystoleReport) -> list[str]:
    """Angle and null-homotopy invariants that must hold for every report."""
    import math

    out = []
    screened = list(report.candidates) + list(report.unresolved)
    for c in screened:
        for va in c.angles.vertices:
            if va.left.quarters + va.right.quarters != va.num_sectors:
                out.append(f"angle sum (quarters) at vertex {va.singularity}")
            if abs(va.left.value + va.right.value - va.cone_angle) > 1e-12:
                out.append(f"angle sum (float) at vertex {va.singularity}")
        if c.verdict == "null-homotopic" and c.developing != (0, 0):
            out.append("null-homotopic candidate with nonzero developing sum")
    if report.systole_path is not None:
        ang = path_angles(o, report.systole_path)
        if not ang.is_geodesic():
            out.append("accepted systole fails the geodesic angle criterion")
        if math.isclose(float(report.systole), 0.0):
            out.append("zero systole")
    return out
