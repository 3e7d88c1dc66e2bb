"""Cyclic covers obtained by cutting along a regular closed geodesic.

Take a ``sigma_a``-cycle ``C`` (a horizontal row of squares) and cut along a
horizontal line through that row.  Paste ``k`` copies of the surface so that
crossing the cut upward moves from copy ``j`` to copy ``j+1 (mod k)``::

    sa'(i, j) = (sa(i), j)
    sb'(i, j) = (sb(i), j + 1)  if sb(i) in C  else  (sb(i), j)

Square ``(i, j)`` is numbered ``j * n + i``.  The formula only sees which
row is cut, so two placements give the same cover:

* ``edge``: the bottom edges of ``C``.  This line is a regular closed geodesic
  exactly when every lower-left corner of ``C`` is a regular point.
* ``core``: a line at height ``0 < t < 1`` inside the row.  It never meets a
  vertex, so it is always regular.

Edge cuts are preferred when one exists.  Some origamis have only cone points
as vertices (every degree-4 surface in ``H(1,1)``, the L), so core cuts are
needed.  Vertical cuts along ``sigma_b``-cycles work the same way with the
roles swapped.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidCut
from .origami import Origami


@dataclass(frozen=True)
class CutSpec:
    axis: str  # "h": through a sigma_a-cycle; "v": through a sigma_b-cycle
    cycle: tuple[int, ...]
    placement: str = "edge"  # "edge" (grid line) or "core" (interior line)

    def to_json(self) -> dict:
        return {
            "axis": "horizontal" if self.axis == "h" else "vertical",
            "cycle": [i + 1 for i in self.cycle],
            "placement": self.placement,
        }


def _cycles(o: Origami, axis: str):
    perm = o.sigma_a if axis == "h" else o.sigma_b
    return sorted(perm.cycles(include_fixed=True), key=lambda c: (len(c), c))


def find_regular_cut(o: Origami) -> CutSpec:
    """A regular closed horizontal or vertical geodesic.

    Uses a grid line whose corners are all regular if one exists, otherwise
    the core of the shortest horizontal row.
    """
    sing = o.singularity_of_square
    for axis in ("h", "v"):
        for c in _cycles(o, axis):
            if not any(i in sing for i in c):
                return CutSpec(axis, c, "edge")
    return CutSpec("h", _cycles(o, "h")[0], "core")


def _validate(o: Origami, cut: CutSpec) -> None:
    if cut.axis not in ("h", "v") or cut.placement not in ("edge", "core"):
        raise InvalidCut(f"unknown cut {cut.axis!r}/{cut.placement!r}")
    perm = o.sigma_a if cut.axis == "h" else o.sigma_b
    if not cut.cycle:
        raise InvalidCut("empty cut")
    orbit, i = [], cut.cycle[0]
    while i not in orbit:
        orbit.append(i)
        i = perm(i)
    if set(orbit) != set(cut.cycle) or len(orbit) != len(cut.cycle):
        raise InvalidCut("cut is not a full cycle of the relevant permutation")
    if cut.placement == "edge" and any(i in o.singularity_of_square for i in cut.cycle):
        raise InvalidCut("grid-line cut passes through a cone point")


def cyclic_cover(o: Origami, cut: CutSpec, k: int) -> Origami:
    if k < 1:
        raise ValueError("k must be at least 1")
    _validate(o, cut)
    n = o.degree
    a, b = o.sigma_a.images, o.sigma_b.images
    cyc = set(cut.cycle)
    na = [0] * (n * k)
    nb = [0] * (n * k)
    for j in range(k):
        for i in range(n):
            x = j * n + i
            if cut.axis == "h":
                na[x] = j * n + a[i]
                jj = (j + 1) % k if b[i] in cyc else j
                nb[x] = jj * n + b[i]
            else:
                nb[x] = j * n + b[i]
                jj = (j + 1) % k if a[i] in cyc else j
                na[x] = jj * n + a[i]
    return Origami.from_images(na, nb)


@dataclass
class CoverReport:
    k: int
    base_genus: int
    cover_genus: int
    base_stratum: str
    cover_stratum: str
    base_systole: object
    cover_systole: object
    genus_ok: bool
    stratum_ok: bool
    systole_ok: bool

    @property
    def ok(self) -> bool:
        return self.genus_ok and self.stratum_ok and self.systole_ok

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "base_genus": self.base_genus,
            "cover_genus": self.cover_genus,
            "base_stratum": self.base_stratum,
            "cover_stratum": self.cover_stratum,
            "base_systole": None if self.base_systole is None else str(self.base_systole),
            "cover_systole": None if self.cover_systole is None else str(self.cover_systole),
            "genus_ok": self.genus_ok,
            "stratum_ok": self.stratum_ok,
            "systole_ok": self.systole_ok,
            "ok": self.ok,
        }


def verify_cover(o: Origami, cover: Origami, k: int, with_systoles: bool = True) -> CoverReport:
    from .systole import systole

    g = o.genus
    genus_ok = cover.genus == k * (g - 1) + 1 and cover.degree == k * o.degree
    stratum_ok = sorted(cover.stratum.orders) == sorted(list(o.stratum.orders) * k)
    sy_b = sy_c = None
    systole_ok = True
    if with_systoles and o.singularities:
        sy_b = systole(o).systole
        sy_c = systole(cover).systole
        systole_ok = not (sy_c < sy_b)
    return CoverReport(k, g, cover.genus, str(o.stratum), str(cover.stratum), sy_b, sy_c, genus_ok, stratum_ok, systole_ok)
