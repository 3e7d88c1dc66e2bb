"""Closed-form bounds on systolic ratios and short saddle connections, plus an audit.

For a surface of area ``A`` in ``H(k_1 <= ... <= k_n)`` of genus ``g``:

* ``sr <= 4 / (pi (k_n + 1))``                               (area bound)
* ``l(d_1)^2 / A <= 2 / (sqrt3 (2g - 2 + n))``               (shortest saddle connection)
* ``l(d_l)^2 / A <= 4 / (pi (2g + n - 2l - sum of the 2l-2 largest k))``, ``l >= 2``
* in ``H(1,...,1)``: ``l(d_l)^2 / A <= (1 - l(d_1)^2 l / A) / (pi (g - l))``
* the maximum over ``H(2g-2)`` is ``4 / (sqrt3 (4g - 2))``.

The ``d_l`` in the bounds are particular saddle connections; the audit
checks the weaker statement about the ``l``-th shortest saddle connection
overall, which follows because the ``l``-th smallest length is at most
``max(l(d_1), ..., l(d_l))`` and the bounds grow with ``l``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import EmptyStratum, InsufficientDirectionSet
from .lengths import ExactLength
from .origami import Origami, Stratum
from .saddle_graph import SaddleGraph, direction_set, union_graph

SQRT3 = math.sqrt(3.0)
# slack for float evaluation of the irrational right-hand sides
EPS = 1e-12


def _check(k: Stratum) -> Stratum:
    if not k.orders:
        raise EmptyStratum("empty stratum (genus 1): the bounds need at least one cone point")
    return k


def area_bound(k: Stratum) -> float:
    k = _check(k)
    return 4.0 / (math.pi * (max(k.orders) + 1))


def bg_bound(k: Stratum) -> float:
    k = _check(k)
    return 2.0 / (SQRT3 * (2 * k.genus - 2 + len(k.orders)))


def minimal_stratum_value(g: int) -> float:
    """Largest systolic ratio in ``H(2g-2)``."""
    return 4.0 / (SQRT3 * (4 * g - 2))


def short_saddle_bounds(k: Stratum) -> list[float | None]:
    """Bounds for ``l = 1 .. floor(n/2)``; ``None`` where the denominator is not positive."""
    k = _check(k)
    orders = sorted(k.orders)
    n, g = len(orders), k.genus
    out: list[float | None] = [bg_bound(k)]
    for l in range(2, n // 2 + 1):
        largest = sum(orders[n - 1 - i] for i in range(2 * l - 2))
        den = 2 * g + n - 2 * l - largest
        out.append(4.0 / (math.pi * den) if den > 0 else None)
    return out[: max(1, n // 2)]


def refined_bounds(k: Stratum, shortest_sq_over_area: float) -> list[float | None]:
    """``H(1,...,1)`` refinement for ``l = 2 .. g-1``; index 0 holds the ``l = 1`` bound."""
    k = _check(k)
    if any(x != 1 for x in k.orders):
        raise ValueError("the refined bound applies to H(1,...,1) only")
    g = k.genus
    out: list[float | None] = [1.0 / (2 * SQRT3 * (g - 1))]
    for l in range(2, g):
        out.append((1.0 - shortest_sq_over_area * l) / (math.pi * (g - l)))
    return out


@dataclass
class Check:
    name: str
    measured: float
    bound: float | None
    ok: bool
    note: str = ""

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "measured": f"{self.measured:.12g}",
            "bound": None if self.bound is None else f"{self.bound:.12g}",
            "ok": self.ok,
            "note": self.note,
        }


@dataclass
class BoundsReport:
    stratum: str
    area_bound: float
    bg_bound: float
    short_saddle_bounds: list[float | None]
    shortest_saddles: list[ExactLength]
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def violations(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def to_json(self) -> dict:
        return {
            "stratum": self.stratum,
            "area_bound": f"{self.area_bound:.12g}",
            "bg_bound": f"{self.bg_bound:.12g}",
            "short_saddle_bounds": [None if b is None else f"{b:.12g}" for b in self.short_saddle_bounds],
            "shortest_saddles": [str(s) for s in self.shortest_saddles],
            "ok": self.ok,
            "checks": [c.to_json() for c in self.checks],
        }


def length_cap(k: Stratum, area: int) -> float:
    """Longest saddle connection the audit can need: ``sqrt(max bound * area)``."""
    bounds = [b for b in short_saddle_bounds(k) if b is not None]
    if all(x == 1 for x in k.orders) and k.genus > 2:
        bounds += [1.0 / (math.pi * (k.genus - l)) for l in range(2, k.genus)]
    return math.sqrt(max(bounds) * area)


def audit_graph(o: Origami) -> SaddleGraph:
    """Graph on every direction up to ``length_cap``."""
    cap = length_cap(o.stratum, o.area)
    return union_graph(o, direction_set(max(1, math.ceil(cap))))


def _le(x: float, b: float) -> bool:
    return x <= b + EPS


def audit(o: Origami, sr, graph: SaddleGraph | None = None) -> BoundsReport:
    """Check ``o`` (with measured systolic ratio ``sr``) against every applicable bound."""
    k = o.stratum
    area = o.area
    if graph is None:
        graph = audit_graph(o)
    cap = length_cap(k, area)
    radius2 = max(d.norm2 for d in graph.directions)
    full = {(d.x, d.y) for d in graph.directions}
    need = {d.as_tuple() for d in direction_set(max(1, math.ceil(cap)))}
    if not need <= full:
        raise InsufficientDirectionSet(
            f"graph covers directions of norm^2 <= {radius2}; the audit needs norm <= {cap:.6g}"
        )
    ssb = short_saddle_bounds(k)
    lengths = sorted(e.length for e in graph.edges)
    rep = BoundsReport(str(k), area_bound(k), bg_bound(k), ssb, lengths[: len(ssb)])

    srf = float(sr)
    rep.checks.append(Check("area", srf, rep.area_bound, _le(srf, rep.area_bound)))
    if len(k.orders) == 1:
        val = minimal_stratum_value(k.genus)
        rep.checks.append(Check("minimal_stratum", srf, val, _le(srf, val)))

    def lth(l: int) -> float | None:
        if len(lengths) < l:
            return None
        return float(lengths[l - 1].squared()) / area

    for l, b in enumerate(ssb, start=1):
        name = "bg" if l == 1 else f"short_saddle_{l}"
        if b is None:
            rep.checks.append(Check(name, float("nan"), None, True, "denominator not positive; skipped"))
            continue
        m = lth(l)
        if m is None:
            rep.checks.append(Check(name, float("inf"), b, False, f"fewer than {l} saddle connections below the cap"))
        else:
            rep.checks.append(Check(name, m, b, _le(m, b)))

    if all(x == 1 for x in k.orders) and k.genus > 2 and lengths:
        s1 = lth(1)
        refined = refined_bounds(k, s1)
        running = refined[0]
        for l in range(2, k.genus):
            running = max(running, refined[l - 1])
            m = lth(l)
            if m is None:
                rep.checks.append(Check(f"refined_{l}", float("inf"), running, False, "too few saddle connections"))
            else:
                rep.checks.append(Check(f"refined_{l}", m, running, _le(m, running)))
    return rep
