"""Angles at cone points.

A vertex of an origami is surrounded by square corners, each filling a quarter
turn.  Walking counterclockwise around the vertex that is the lower-left
corner of square ``i`` visits::

    LL(i), LR(sa^-1 i), UR(sb^-1 sa^-1 i), UL(sa sb^-1 sa^-1 i), LL(sb sa sb^-1 sa^-1 i), ...

so the lower-left sectors follow the inverse commutator ``[sb, sa]``, i.e. the
commutator cycle read backwards.  A cone point of order ``k`` has ``4(k+1)``
sectors; sector ``p`` covers absolute angles ``[p pi/2, (p+1) pi/2)`` and
its corner type is ``CORNERS[p % 4]``.  A ray on a sector boundary belongs to
the counterclockwise sector.

Angles are kept exact as ``quarters * pi/2 + angle(u_to) - angle(u_from)``
with ``u_from`` and ``u_to`` integer vectors in the half-open first quadrant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import MissingAnchors, NotReduced
from .origami import Origami, Singularity
from .saddle_graph import CORNERS, Anchor, EdgePath

HALF_PI = math.pi / 2


@dataclass(frozen=True)
class VertexLink:
    singularity: int
    sectors: tuple[tuple[int, str], ...]

    @property
    def num_sectors(self) -> int:
        return len(self.sectors)

    def ll_sequence(self) -> tuple[int, ...]:
        return tuple(sq for sq, c in self.sectors if c == "LL")


def vertex_link(o: Origami, s: Singularity) -> VertexLink:
    a, b = o.sigma_a.images, o.sigma_b.images
    ainv, binv = o.inverses
    start = s.cycle[0]
    sectors = []
    i = start
    while True:
        lr = ainv[i]
        ur = binv[lr]
        ul = a[ur]
        sectors += [(i, "LL"), (lr, "LR"), (ur, "UR"), (ul, "UL")]
        i = b[ul]
        if i == start:
            break
        if len(sectors) > 4 * o.degree:  # pragma: no cover
            raise RuntimeError("corner walk did not close")
    return VertexLink(s.id, tuple(sectors))


@lru_cache(maxsize=256)
def _sector_table(o: Origami) -> dict[tuple[int, str], tuple[int, int, int]]:
    """(square, corner) -> (singularity id, sector index, sector count)."""
    table = {}
    for s in o.singularities:
        link = vertex_link(o, s)
        q = link.num_sectors
        for p, key in enumerate(link.sectors):
            table[key] = (s.id, p, q)
    return table


def _rotate_cw(v: tuple[int, int], quarters: int) -> tuple[int, int]:
    x, y = v
    for _ in range(quarters % 4):
        x, y = y, -x
    return x, y


def _cross(u, w) -> int:
    return u[0] * w[1] - u[1] * w[0]


@dataclass(frozen=True)
class AngularPosition:
    """Absolute angle ``sector * pi/2 + angle(u)`` of a ray at a cone point."""

    singularity: int
    sector: int
    u: tuple[int, int]
    num_sectors: int

    @property
    def theta(self) -> float:
        return self.sector * HALF_PI + math.atan2(self.u[1], self.u[0])

    @property
    def cone_angle(self) -> float:
        return self.num_sectors * HALF_PI


def angular_position(o: Origami, anchor: Anchor) -> AngularPosition:
    sid, p, q = _sector_table(o)[(anchor.square, anchor.corner)]
    u = _rotate_cw(anchor.vector, CORNERS.index(anchor.corner))
    if not (u[0] > 0 and u[1] >= 0):
        raise ValueError(f"ray {anchor.vector} does not lie in sector {anchor.corner}")
    return AngularPosition(sid, p, u, q)


@dataclass(frozen=True)
class Angle:
    """``quarters * pi/2 + angle(u_to) - angle(u_from)``, exact."""

    quarters: int
    u_from: tuple[int, int]
    u_to: tuple[int, int]

    @property
    def value(self) -> float:
        return (
            self.quarters * HALF_PI
            + math.atan2(self.u_to[1], self.u_to[0])
            - math.atan2(self.u_from[1], self.u_from[0])
        )

    def less_than_pi(self) -> bool:
        if self.quarters <= 1:
            return True
        if self.quarters == 2:
            return _cross(self.u_from, self.u_to) < 0
        return False

    def to_json(self) -> dict:
        return {"quarters": self.quarters, "from": list(self.u_from), "to": list(self.u_to), "value": round(self.value, 12)}


def ccw_angle(frm: AngularPosition, to: AngularPosition) -> Angle:
    """Counterclockwise angle from ray ``frm`` to ray ``to`` at the same cone point, in (0, cone angle)."""
    if frm.singularity != to.singularity:
        raise ValueError("rays at different cone points")
    q = frm.num_sectors
    d = (to.sector - frm.sector) % q
    if d == 0 and _cross(frm.u, to.u) <= 0:
        d = q
    return Angle(d, frm.u, to.u)


@dataclass(frozen=True)
class VertexAngles:
    singularity: int
    left: Angle
    right: Angle
    num_sectors: int

    @property
    def cone_angle(self) -> float:
        return self.num_sectors * HALF_PI

    def min_at_least_pi(self) -> bool:
        return not self.left.less_than_pi() and not self.right.less_than_pi()

    def to_json(self) -> dict:
        return {
            "vertex": self.singularity,
            "alpha_left": self.left.to_json(),
            "alpha_right": self.right.to_json(),
            "cone_angle_quarters": self.num_sectors,
        }


@dataclass(frozen=True)
class PathAngles:
    vertices: tuple[VertexAngles, ...]

    def all_left_below_pi(self) -> bool:
        return all(v.left.less_than_pi() for v in self.vertices)

    def all_right_below_pi(self) -> bool:
        return all(v.right.less_than_pi() for v in self.vertices)

    def is_geodesic(self) -> bool:
        return all(v.min_at_least_pi() for v in self.vertices)

    def to_json(self) -> list[dict]:
        return [v.to_json() for v in self.vertices]


def _leaving(step) -> Anchor:
    e, fwd = step
    return e.start_anchor if fwd else e.end_anchor


def _arriving(step) -> Anchor:
    e, fwd = step
    return e.end_anchor if fwd else e.start_anchor


def path_angles(o: Origami, path: EdgePath) -> PathAngles:
    """Left/right angles at every vertex of a closed reduced path.

    The vertex before step ``k`` sits between the incoming step ``k-1`` and
    the outgoing step ``k``; ``alpha_L`` runs counterclockwise from the
    outgoing ray to the reversed incoming ray.
    """
    if not path.is_closed():
        raise ValueError("path is not closed")
    if not path.is_reduced():
        raise NotReduced("path backtracks")
    for e, _ in path.steps:
        if e.start_anchor is None or e.end_anchor is None:
            raise MissingAnchors(f"edge {e.id} has no anchors; build the graph by ray tracing")
    out = []
    n = len(path.steps)
    for k in range(n):
        outgoing = angular_position(o, _leaving(path.steps[k]))
        back = angular_position(o, _arriving(path.steps[k - 1]))
        left = ccw_angle(outgoing, back)
        right = Angle(outgoing.num_sectors - left.quarters, left.u_to, left.u_from)
        out.append(VertexAngles(outgoing.singularity, left, right, outgoing.num_sectors))
    return PathAngles(tuple(out))


def is_null_homotopic_minimal(o: Origami, path: EdgePath, angles: PathAngles | None = None) -> bool:
    """Verdict for a shortest closed reduced path of the graph.

    Such a path is null-homotopic exactly when it bounds an embedded triangle:
    three edges, with all angles on one side below pi.
    """
    if path.combinatorial_length != 3:
        return False
    if angles is None:
        angles = path_angles(o, path)
    return angles.all_left_below_pi() or angles.all_right_below_pi()


def developing_sum(path: EdgePath) -> tuple[int, int]:
    return path.developing_sum()


def satisfies_geodesic_criterion(o: Origami, path: EdgePath, angles: PathAngles | None = None) -> bool:
    """Both side angles are at least pi at every vertex."""
    if angles is None:
        angles = path_angles(o, path)
    return angles.is_geodesic()
