"""Graphs of saddle connections of an origami.

Three constructions of the direction-``v`` graph are provided:

* ``horizontal_graph``: direction ``(1,0)`` read off the permutations by
  walking ``sigma_a``-orbits between squares with a singular lower-left corner.
* ``graph_in_direction``: shear ``v`` to horizontal with an SL(2,Z) matrix and
  reuse ``horizontal_graph``; weights are rescaled by ``|v|``.
* ``trace_graph_in_direction``: follow straight rays of direction ``v`` across
  the tiling.  This is independent of the SL(2,Z) machinery and is the only
  construction that yields angular anchors for both endpoints.

An edge is recorded once, oriented along its direction ``v`` (which always
lies in the upper half plane), and may be traversed both ways.
"""

from __future__ import annotations

import functools
import json
from collections import Counter
from dataclasses import dataclass
from math import gcd, isqrt

from .errors import EmptyGraph, NoSingularities
from .lengths import ExactLength
from .origami import Origami
from .sl2 import Direction, act_tracked, as_direction, matrix_for_direction

CORNERS = ("LL", "LR", "UR", "UL")


@dataclass(frozen=True)
class Anchor:
    """Where a saddle connection leaves (or enters) a cone point.

    ``square``/``corner`` name the quarter-turn sector containing the ray and
    ``vector`` is the ray's direction leaving the cone point.
    """

    square: int
    corner: str
    vector: tuple[int, int]


@dataclass(frozen=True)
class SaddleEdge:
    id: int
    source: int
    target: int
    direction: Direction
    steps: int
    start_anchor: Anchor | None = None
    end_anchor: Anchor | None = None

    @property
    def length(self) -> ExactLength:
        return ExactLength.from_steps(self.steps, self.direction.as_tuple())

    @property
    def length_squared(self) -> int:
        return self.steps * self.steps * self.direction.norm2

    @property
    def developing_vector(self) -> tuple[int, int]:
        return self.steps * self.direction.x, self.steps * self.direction.y

    @property
    def is_loop(self) -> bool:
        return self.source == self.target

    def signature(self) -> tuple:
        return self.source, self.target, self.direction.as_tuple(), self.steps

    def to_json(self) -> dict:
        out = {
            "id": self.id,
            "source": self.source,
            "target": self.target,
            "direction": list(self.direction.as_tuple()),
            "steps": self.steps,
            "length_squared": self.length_squared,
            "length": str(self.length),
            "value": self.length.decimal(),
        }
        for name, anc in (("start_anchor", self.start_anchor), ("end_anchor", self.end_anchor)):
            if anc is not None:
                out[name] = {"square": anc.square + 1, "corner": anc.corner, "vector": list(anc.vector)}
        return out


@dataclass(frozen=True)
class SaddleGraph:
    vertices: tuple[int, ...]
    edges: tuple[SaddleEdge, ...]
    directions: tuple[Direction, ...]

    def weight_multiset(self) -> Counter:
        return Counter(e.length for e in self.edges)

    def signature_multiset(self) -> Counter:
        return Counter(e.signature() for e in self.edges)

    def incident(self) -> dict[int, list[tuple[SaddleEdge, bool]]]:
        """vertex -> list of (edge, forward) traversals leaving it."""
        out = {v: [] for v in self.vertices}
        for e in self.edges:
            out[e.source].append((e, True))
            out[e.target].append((e, False))
        return out

    def has_anchors(self) -> bool:
        return all(e.start_anchor is not None and e.end_anchor is not None for e in self.edges)

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "directions": [list(d.as_tuple()) for d in self.directions],
            "edges": [e.to_json() for e in self.edges],
        }

    def to_dot(self) -> str:
        lines = ["graph saddle_connections {"]
        for v in self.vertices:
            lines.append(f"  p{v};")
        for e in self.edges:
            lines.append(f'  p{e.source} -- p{e.target} [label="{e.length}", id="{e.id}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def dumps(self, fmt: str = "json") -> str:
        if fmt == "dot":
            return self.to_dot()
        return json.dumps(self.to_json(), indent=2) + "\n"


@dataclass(frozen=True)
class EdgePath:
    """A sequence of edge traversals ``(edge, forward)``."""

    steps: tuple[tuple[SaddleEdge, bool], ...]

    @property
    def combinatorial_length(self) -> int:
        return len(self.steps)

    @property
    def weight(self) -> ExactLength:
        total = ExactLength()
        for e, _ in self.steps:
            total = total + e.length
        return total

    def vertex_sequence(self) -> list[int]:
        """Start vertex of each traversal."""
        return [e.source if fwd else e.target for e, fwd in self.steps]

    @staticmethod
    def _end(step) -> int:
        e, fwd = step
        return e.target if fwd else e.source

    def is_closed(self) -> bool:
        if not self.steps:
            return False
        verts = self.vertex_sequence()
        return all(self._end(s) == verts[(k + 1) % len(verts)] for k, s in enumerate(self.steps))

    def is_reduced(self, cyclic: bool = True) -> bool:
        n = len(self.steps)
        pairs = range(n) if cyclic else range(n - 1)
        for k in pairs:
            (e1, f1), (e2, f2) = self.steps[k], self.steps[(k + 1) % n]
            if e1.id == e2.id and f1 != f2:
                return False
        return True

    def key(self) -> tuple[tuple[int, bool], ...]:
        return tuple((e.id, not fwd) for e, fwd in self.steps)

    def reversed(self) -> "EdgePath":
        return EdgePath(tuple((e, not fwd) for e, fwd in reversed(self.steps)))

    def canonical(self) -> "EdgePath":
        """Representative of the path up to rotation and reversal."""
        best = None
        for p in (self, self.reversed()):
            n = len(p.steps)
            for r in range(n):
                q = EdgePath(p.steps[r:] + p.steps[:r])
                if best is None or q.key() < best.key():
                    best = q
        return best

    def is_primitive(self) -> bool:
        """False for proper powers ``w^k`` (k >= 2)."""
        k = self.key()
        n = len(k)
        return all(k != k[d:] + k[:d] for d in range(1, n) if n % d == 0)

    def developing_sum(self) -> tuple[int, int]:
        sx = sy = 0
        for e, fwd in self.steps:
            dx, dy = e.developing_vector
            sgn = 1 if fwd else -1
            sx += sgn * dx
            sy += sgn * dy
        return sx, sy

    def sort_key(self):
        return self.weight, self.combinatorial_length, self.key()

    def to_json(self) -> list[dict]:
        return [
            {"edge": e.id, "forward": fwd, "direction": list(e.direction.as_tuple()), "steps": e.steps}
            for e, fwd in self.steps
        ]


def _require_singularities(o: Origami) -> None:
    if not o.singularities:
        raise NoSingularities("origami has no cone points (genus 1); the saddle-connection graph is empty")


def ll_of(o: Origami, square: int, corner: str) -> int:
    """Square whose lower-left corner is the given corner of ``square``."""
    a, b = o.sigma_a.images, o.sigma_b.images
    if corner == "LL":
        return square
    if corner == "LR":
        return a[square]
    if corner == "UL":
        return b[square]
    return b[a[square]]


def horizontal_graph(o: Origami) -> SaddleGraph:
    """Direction ``(1,0)`` graph.

    Each square ``i`` with a singular lower-left corner starts one rightward
    saddle connection along its bottom edge; it ends at ``sa^k(i)`` for the
    least ``k >= 1`` landing on another singular corner.
    """
    _require_singularities(o)
    a = o.sigma_a.images
    binv = o.inverses[1]
    sing = o.singularity_of_square
    d = Direction(1, 0)
    edges = []
    for i in o.singular_squares:
        j, k, last = a[i], 1, i
        while j not in sing:
            last = j
            j = a[j]
            k += 1
        edges.append(
            SaddleEdge(
                id=len(edges),
                source=sing[i],
                target=sing[j],
                direction=d,
                steps=k,
                start_anchor=Anchor(i, "LL", (1, 0)),
                # the reversed ray (angle pi) lies in the sector below the edge
                end_anchor=Anchor(binv[last], "UR", (-1, 0)),
            )
        )
    return SaddleGraph(tuple(s.id for s in o.singularities), tuple(edges), (d,))


def graph_in_direction(o: Origami, v) -> SaddleGraph:
    """Direction-``v`` graph through the SL(2,Z) action (no anchors)."""
    v = as_direction(v)
    _require_singularities(o)
    A = matrix_for_direction(v)
    oa, ll = act_tracked(A, o)
    h = horizontal_graph(oa)
    sing = o.singularity_of_square
    # cone point of oa with id s -> cone point of o
    to_o = {s.id: sing[ll[s.cycle[0]]] for s in oa.singularities}
    edges = tuple(
        SaddleEdge(e.id, to_o[e.source], to_o[e.target], v, e.steps) for e in h.edges
    )
    return SaddleGraph(tuple(s.id for s in o.singularities), edges, (v,))


def _crossings(x: int, y: int) -> list[str]:
    """Order in which the open segment from 0 to (x, y) meets grid lines."""
    ax = abs(x)
    events = [(j * y, "v") for j in range(1, ax)] + [(l * ax, "h") for l in range(1, y)]
    # compare j/ax with l/y via cross-multiplication (never equal for primitive v)
    events.sort()
    return [kind for _, kind in events]


def trace_graph_in_direction(o: Origami, v) -> SaddleGraph:
    """Direction-``v`` graph by straight-line ray tracing, with anchors.

    Rays start at every singular vertex, one per sheet.  For ``x > 0`` a ray
    leaves through the lower-left corner of a square; for ``x <= 0`` through
    the lower-right corner of the square to its left.  A ray moves from lattice
    point to lattice point in jumps of ``(x, y)``; it stops at the first
    singular lattice point.
    """
    v = as_direction(v)
    _require_singularities(o)
    x, y = v.x, v.y
    a, b = o.sigma_a.images, o.sigma_b.images
    ainv, binv = o.inverses
    sing = o.singularity_of_square
    crossings = _crossings(x, y)
    step_right = a if x > 0 else ainv
    backwards = (-x, -y)
    edges = []
    limit = 4 * o.degree + 4
    for i in o.singular_squares:
        start_sq = i if x > 0 else ainv[i]
        start = Anchor(start_sq, "LL" if x > 0 else "LR", (x, y))
        sq = start_sq
        m = 0
        while True:
            for kind in crossings:
                sq = step_right[sq] if kind == "v" else b[sq]
            m += 1
            if y == 0:          # along the bottom edge, arriving at LR(sq)
                end_corner_sq, end_corner = binv[sq], "UR"
                ll = a[sq]
            elif x > 0:         # arriving at UR(sq)
                end_corner_sq, end_corner = sq, "UR"
                ll = b[a[sq]]
            elif x == 0:        # along the right edge of sq, arriving at UR(sq)
                end_corner_sq, end_corner = a[sq], "UL"
                ll = b[a[sq]]
            else:               # arriving at UL(sq)
                end_corner_sq, end_corner = sq, "UL"
                ll = b[sq]
            if ll in sing:
                break
            if m > limit:
                raise RuntimeError("ray tracing did not terminate")  # pragma: no cover
            # regular vertex: continue straight into the unique next sector
            sq = ll if x > 0 else ainv[ll]
        edges.append(
            SaddleEdge(
                id=len(edges),
                source=sing[i],
                target=sing[ll],
                direction=v,
                steps=m,
                start_anchor=start,
                end_anchor=Anchor(end_corner_sq, end_corner, backwards),
            )
        )
    return SaddleGraph(tuple(s.id for s in o.singularities), tuple(edges), (v,))


def direction_set(l0) -> list[Direction]:
    """Primitive directions ``(x, y)`` in the upper half plane with ``x^2+y^2 <= l0^2``.

    ``l0`` may be an int or an ``ExactLength``.  Sorted by counterclockwise
    angle from the positive x-axis.
    """
    if isinstance(l0, float):
        r2 = l0 * l0
        ok = lambda n2: n2 <= r2  # noqa: E731
    else:
        r2 = ExactLength.coerce(l0).squared()
        ok = lambda n2: not (r2 < n2)  # noqa: E731
    if float(l0) < 1:
        raise ValueError("l0 must be at least 1")
    rmax = int(float(l0)) + 1
    out = []
    for yy in range(0, rmax + 1):
        for xx in range(-rmax, rmax + 1):
            if (yy > 0 or xx > 0) and gcd(abs(xx), yy) == 1 and ok(xx * xx + yy * yy):
                out.append(Direction(xx, yy))

    # counterclockwise order from the positive x-axis (all lie in a half plane)
    def cmp(p, q):
        cross = p.x * q.y - p.y * q.x
        return -1 if cross > 0 else (1 if cross < 0 else 0)

    return sorted(out, key=functools.cmp_to_key(cmp))


def union_graph(o: Origami, directions, method: str = "trace") -> SaddleGraph:
    """The graph on the given direction set; edges renumbered in direction order."""
    directions = [as_direction(v) for v in directions]
    if not directions:
        raise EmptyGraph("empty direction set")
    _require_singularities(o)
    build = trace_graph_in_direction if method == "trace" else graph_in_direction
    edges = []
    for v in directions:
        for e in build(o, v).edges:
            edges.append(
                SaddleEdge(len(edges), e.source, e.target, e.direction, e.steps, e.start_anchor, e.end_anchor)
            )
    return SaddleGraph(tuple(s.id for s in o.singularities), tuple(edges), tuple(directions))


def squares_on_singular_lines(o: Origami) -> int:
    """Number of squares whose bottom edge lies on a horizontal line through a cone point."""
    a = o.sigma_a.images
    marked = set()
    for i in o.singular_squares:
        j = i
        while j not in marked:
            marked.add(j)
            j = a[j]
    return len(marked)


def isqrt_exact(n: int) -> int | None:
    r = isqrt(n)
    return r if r * r == n else None
