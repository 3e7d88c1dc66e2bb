"""Origamis (square-tiled surfaces) as pairs of permutations.

Squares are labelled ``0..n-1`` internally and ``1..n`` in every textual or
JSON representation.  Composition follows ``(f*g)(x) = f(g(x))`` and the
commutator is ``[sa, sb] = sa * sb * sa^-1 * sb^-1``.

Walking counterclockwise around the lower-left corner of square ``i`` visits
the lower-left corners of ``sb sa sb^-1 sa^-1 (i)``, which is the inverse of
the commutator.  Vertices of the tiling therefore correspond to commutator
cycles (traversed backwards); cycles of length ``k+1 >= 2`` are cone points of
angle ``2*pi*(k+1)``.
"""

from __future__ import annotations

import json
import math
import re
from collections import Counter
from dataclasses import dataclass
from functools import cached_property

from .errors import Disconnected, NotABijection, ParseError


@dataclass(frozen=True)
class Permutation:
    """A bijection of ``{0..n-1}`` stored by its image list."""

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if sorted(self.images) != list(range(n)):
            raise NotABijection(f"not a bijection on {n} points: {self.images}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, cycles, n: int) -> "Permutation":
        """Build from 0-based disjoint cycles; points not listed are fixed."""
        img = list(range(n))
        seen = set()
        for cyc in cycles:
            for p in cyc:
                if not 0 <= p < n:
                    raise NotABijection(f"point {p + 1} outside 1..{n}")
                if p in seen:
                    raise NotABijection(f"point {p + 1} appears twice in cycle notation")
                seen.add(p)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a] = b
        return cls(tuple(img))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        a = self.images
        return Permutation(tuple(a[j] for j in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def __pow__(self, k: int) -> "Permutation":
        base = self if k >= 0 else self.inverse()
        out = Permutation.identity(self.degree)
        for _ in range(abs(k)):
            out = base * out
        return out

    def conjugate(self, tau: "Permutation") -> "Permutation":
        """Relabel points by ``tau``: returns ``tau * self * tau^-1``."""
        return tau * self * tau.inverse()

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        """Disjoint cycles, each starting at its smallest point, sorted by that point."""
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            j = self.images[start]
            while j != start:
                cyc.append(j)
                seen[j] = True
                j = self.images[j]
            if include_fixed or len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles(include_fixed=True)), reverse=True))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def to_cycle_string(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + ",".join(str(p + 1) for p in c) + ")" for c in cyc)

    def __str__(self):
        return self.to_cycle_string()


@dataclass(frozen=True)
class Singularity:
    id: int
    cycle: tuple[int, ...]  # commutator cycle, starting at its smallest square

    @property
    def order(self) -> int:
        return len(self.cycle) - 1

    @property
    def cone_angle(self) -> float:
        return 2 * math.pi * (self.order + 1)


@dataclass(frozen=True, order=True)
class Stratum:
    """``H(k_1, ..., k_n)`` with orders sorted ascending."""

    orders: tuple[int, ...]

    def __post_init__(self):
        orders = tuple(sorted(self.orders))
        if any(k <= 0 for k in orders):
            raise ValueError("stratum orders must be positive")
        if sum(orders) % 2:
            raise ValueError(f"orders {orders} have odd sum; no such stratum")
        object.__setattr__(self, "orders", orders)

    @classmethod
    def parse(cls, text: str) -> "Stratum":
        body = text.strip()
        m = re.fullmatch(r"H?\(?([0-9,\s]*)\)?", body)
        if not m:
            raise ParseError(f"cannot parse stratum {text!r}")
        parts = [p for p in re.split(r"[,\s]+", m.group(1)) if p]
        return cls(tuple(int(p) for p in parts))

    @property
    def genus(self) -> int:
        return 1 + sum(self.orders) // 2

    @property
    def num_cone_points(self) -> int:
        return len(self.orders)

    @property
    def min_degree_hint(self) -> int:
        return sum(k + 1 for k in self.orders)

    def __str__(self):
        return "H(" + ",".join(str(k) for k in self.orders) + ")"

    def __len__(self):
        return len(self.orders)


@dataclass(frozen=True)
class Origami:
    """A connected square-tiled surface.

    ``sigma_a`` maps a square to its right neighbour, ``sigma_b`` to its top
    neighbour.
    """

    sigma_a: Permutation
    sigma_b: Permutation

    def __post_init__(self):
        if not isinstance(self.sigma_a, Permutation):
            object.__setattr__(self, "sigma_a", Permutation(tuple(self.sigma_a)))
        if not isinstance(self.sigma_b, Permutation):
            object.__setattr__(self, "sigma_b", Permutation(tuple(self.sigma_b)))
        if self.sigma_a.degree != self.sigma_b.degree:
            raise NotABijection("sigma_a and sigma_b act on different ground sets")
        if self.sigma_a.degree == 0:
            raise NotABijection("an origami needs at least one square")
        if not _is_transitive(self.sigma_a.images, self.sigma_b.images):
            raise Disconnected("<sigma_a, sigma_b> is not transitive; surface is disconnected")

    @classmethod
    def from_images(cls, a, b) -> "Origami":
        return cls(Permutation(tuple(a)), Permutation(tuple(b)))

    @property
    def degree(self) -> int:
        return self.sigma_a.degree

    @property
    def area(self) -> int:
        return self.degree

    @cached_property
    def inverses(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return self.sigma_a.inverse().images, self.sigma_b.inverse().images

    @cached_property
    def commutator(self) -> Permutation:
        a, b = self.sigma_a, self.sigma_b
        return a * b * a.inverse() * b.inverse()

    @cached_property
    def singularities(self) -> tuple[Singularity, ...]:
        cycles = self.commutator.cycles()
        return tuple(Singularity(i, c) for i, c in enumerate(cycles))

    @cached_property
    def singularity_of_square(self) -> dict[int, int]:
        """Square -> id of the singularity at its lower-left corner (singular corners only)."""
        return {sq: s.id for s in self.singularities for sq in s.cycle}

    @cached_property
    def singular_squares(self) -> tuple[int, ...]:
        """Squares whose lower-left corner is a cone point, ascending."""
        return tuple(sorted(self.singularity_of_square))

    @cached_property
    def stratum(self) -> Stratum:
        return Stratum(tuple(s.order for s in self.singularities))

    @property
    def genus(self) -> int:
        return self.stratum.genus

    def cycle_lengths(self) -> list[int]:
        return [len(c) for c in self.sigma_a.cycles(True)] + [len(c) for c in self.sigma_b.cycles(True)]

    def relabel(self, tau: Permutation) -> "Origami":
        """Simultaneous conjugation: square ``i`` is renamed ``tau(i)``."""
        return Origami(self.sigma_a.conjugate(tau), self.sigma_b.conjugate(tau))

    @cached_property
    def canonical(self) -> "Origami":
        return Origami.from_images(*canonical_form(self.sigma_a.images, self.sigma_b.images))

    def is_isomorphic(self, other: "Origami") -> bool:
        return self.degree == other.degree and self.canonical == other.canonical

    def to_text(self) -> str:
        return f"sigma_a={self.sigma_a.to_cycle_string()}\nsigma_b={self.sigma_b.to_cycle_string()}\n"

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "sigma_a": [i + 1 for i in self.sigma_a.images],
            "sigma_b": [i + 1 for i in self.sigma_b.images],
            "sigma_a_cycles": self.sigma_a.to_cycle_string(),
            "sigma_b_cycles": self.sigma_b.to_cycle_string(),
        }

    def __str__(self):
        return f"Origami(sigma_a={self.sigma_a}, sigma_b={self.sigma_b}, n={self.degree})"


def _is_transitive(a, b) -> bool:
    n = len(a)
    seen = [False] * n
    seen[0] = True
    stack = [0]
    count = 1
    while stack:
        i = stack.pop()
        for j in (a[i], b[i]):
            if not seen[j]:
                seen[j] = True
                count += 1
                stack.append(j)
    return count == n


def canonical_form(a, b) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Lexicographically least relabelling of a connected pair ``(a, b)``.

    For each start square, squares are renumbered in breadth-first order
    following ``a`` then ``b``.  Two origamis are isomorphic (equal up to
    simultaneous conjugation) iff their canonical forms agree.
    """
    n = len(a)
    best = None
    for start in range(n):
        label = [-1] * n
        order = [start]
        label[start] = 0
        k = 0
        while k < len(order):
            i = order[k]
            k += 1
            for j in (a[i], b[i]):
                if label[j] < 0:
                    label[j] = len(order)
                    order.append(j)
        na = tuple(label[a[i]] for i in order)
        nb = tuple(label[b[i]] for i in order)
        cand = na + nb
        if best is None or cand < best:
            best = cand
    return best[:n], best[n:]


# ---------------------------------------------------------------------------
# parsing

_KEY_A = r"(?:sigma_a|σa|σ_a|s_a|sa|a|r|h)"
_KEY_B = r"(?:sigma_b|σb|σ_b|s_b|sb|b|u|v)"
_KEY_N = r"(?:degree|n)"
_ASSIGN = re.compile(rf"(?<![\w])({_KEY_A}|{_KEY_B}|{_KEY_N})\s*[=:]\s*", re.IGNORECASE)


def _parse_points(body: str) -> list[int]:
    pts = []
    for tok in re.split(r"[,\s]+", body.strip()):
        if not tok:
            continue
        m = re.fullmatch(r"(\d+)\s*\.\.\s*(\d+)", tok)
        if m:
            lo, hi = int(m.group(1)), int(m.group(2))
            if hi < lo:
                raise ParseError(f"bad range {tok!r}")
            pts.extend(range(lo, hi + 1))
        elif tok.isdigit():
            pts.append(int(tok))
        else:
            raise ParseError(f"unexpected token {tok!r}")
    return pts


def _parse_perm_text(text: str) -> tuple[str, list]:
    """Return ``("cycles", [[...], ...])`` or ``("images", [...])`` with 1-based points."""
    t = text.strip().rstrip(",;").strip()
    if t.lower() in ("id", "identity", "()", "e", "1"):
        return "cycles", []
    if t.startswith("["):
        if not t.endswith("]"):
            raise ParseError(f"unterminated one-line notation {text!r}")
        return "images", _parse_points(t[1:-1])
    # normalise "1..8" so the splitter keeps ranges together
    t = re.sub(r"\s*\.\.\s*", "..", t)
    if not re.fullmatch(r"(\([^()]*\)\s*)+", t):
        raise ParseError(f"cannot parse permutation {text!r}")
    return "cycles", [_parse_points(c) for c in re.findall(r"\(([^()]*)\)", t)]


def _build_perm(spec: tuple[str, list], n: int) -> Permutation:
    kind, data = spec
    if kind == "images":
        if len(data) != n:
            raise NotABijection(f"one-line notation has {len(data)} entries, expected {n}")
        return Permutation(tuple(p - 1 for p in data))
    return Permutation.from_cycles([[p - 1 for p in c] for c in data], n)


def _max_point(spec) -> int:
    kind, data = spec
    if kind == "images":
        return len(data)
    return max((p for c in data for p in c), default=0)


def origami_from_specs(spec_a, spec_b, degree: int | None = None) -> Origami:
    for spec in (spec_a, spec_b):
        if any(p < 1 for p in (spec[1] if spec[0] == "images" else [q for c in spec[1] for q in c])):
            raise ParseError("squares are numbered from 1")
    n = degree or max(_max_point(spec_a), _max_point(spec_b), 1)
    return Origami(_build_perm(spec_a, n), _build_perm(spec_b, n))


def _from_json(data) -> Origami:
    if not isinstance(data, dict):
        raise ParseError("JSON origami must be an object")
    try:
        ra, rb = data["sigma_a"], data["sigma_b"]
    except KeyError as exc:
        raise ParseError(f"missing key {exc}") from None

    def spec(v):
        if isinstance(v, str):
            return _parse_perm_text(v)
        if isinstance(v, list) and all(isinstance(p, int) for p in v):
            return "images", v
        raise ParseError(f"bad permutation value {v!r}")

    return origami_from_specs(spec(ra), spec(rb), data.get("degree"))


def parse_origami(text: str) -> Origami:
    """Parse an origami from text.

    Accepted forms::

        sigma_a=(1,2)(3,4), sigma_b=(1,3)     # keys a/b/r/u/σa/σb also work
        σa=(1..8)(9..30); σb=(...)            # ranges inside cycles
        sigma_a=[2,1,3] sigma_b=[3,2,1]       # one-line notation
        sigma_a=id, sigma_b=id, n=1           # explicit degree
        {"sigma_a": [2,1,3], "sigma_b": "(1,3)", "degree": 3}
        (1,2)\\n(1,3)                           # two bare lines
    """
    src = text.strip()
    if not src:
        raise ParseError("empty input")
    if src.startswith("{"):
        try:
            data = json.loads(src)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
        return _from_json(data)

    degree = None
    m = re.search(r"\bon\s+(\d+)\s+squares?\b", src)
    if m:
        degree = int(m.group(1))
        src = src[: m.start()] + src[m.end():]

    matches = list(_ASSIGN.finditer(src))
    if not matches:
        lines = [ln for ln in src.splitlines() if ln.strip() and not ln.strip().startswith("#")]
        if len(lines) != 2:
            raise ParseError("expected 'sigma_a=... sigma_b=...' or two lines of cycles")
        return origami_from_specs(_parse_perm_text(lines[0]), _parse_perm_text(lines[1]), degree)

    values: dict[str, str] = {}
    if src[: matches[0].start()].strip():
        raise ParseError(f"unexpected text {src[: matches[0].start()].strip()!r}")
    for k, mt in enumerate(matches):
        end = matches[k + 1].start() if k + 1 < len(matches) else len(src)
        key = mt.group(1).lower()
        if re.fullmatch(_KEY_A, key, re.IGNORECASE):
            key = "a"
        elif re.fullmatch(_KEY_N, key, re.IGNORECASE):
            key = "n"
        else:
            key = "b"
        if key in values:
            raise ParseError(f"duplicate key for {key}")
        values[key] = src[mt.end(): end].strip().rstrip(",;").strip()
    if "a" not in values or "b" not in values:
        raise ParseError("both sigma_a and sigma_b are required")
    if "n" in values:
        if not values["n"].isdigit() or int(values["n"]) < 1:
            raise ParseError(f"bad degree {values['n']!r}")
        degree = int(values["n"])
    return origami_from_specs(_parse_perm_text(values["a"]), _parse_perm_text(values["b"]), degree)


def vertex_count_by_corners(o: Origami) -> int:
    """Number of vertices of the square complex via union-find on corner gluings.

    Independent of the commutator: corners are merged along every edge gluing.
    """
    n = o.degree
    a, b = o.sigma_a.images, o.sigma_b.images
    parent = list(range(4 * n))  # corner 4*i + {0: LL, 1: LR, 2: UR, 3: UL}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        parent[find(x)] = find(y)

    for i in range(n):
        j = a[i]  # right edge of i = left edge of j
        union(4 * i + 1, 4 * j + 0)
        union(4 * i + 2, 4 * j + 3)
        k = b[i]  # top edge of i = bottom edge of k
        union(4 * i + 3, 4 * k + 0)
        union(4 * i + 2, 4 * k + 1)
    return len({find(x) for x in range(4 * n)})


def order_counter(o: Origami) -> Counter:
    return Counter(s.order for s in o.singularities)
