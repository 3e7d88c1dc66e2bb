"""SL(2,Z) action on origamis.

Generators and their action on ``(sa, sb)``::

    T = [[1, 1], [0, 1]]   (sa, sb) -> (sa, sb * sa^-1)
    S = [[0,-1], [1, 0]]   (sa, sb) -> (sb^-1, sa)

Both formulas come from re-cutting the image of each unit square into unit
squares.  Under ``T`` the lower-left corner of new square ``i`` is the
lower-left corner of old square ``i``; under ``S`` (a quarter turn
counterclockwise) it is the old upper-left corner, i.e. the lower-left corner
of old square ``sb(i)``.  ``act_tracked`` records this correspondence so that
cone points of ``A.O`` can be matched with cone points of ``O``.

``matrix_for_direction(v)`` returns ``A`` with ``A v = (1, 0)``: direction-v
geodesics on ``O`` become horizontal on ``A.O``.  (Writing the same thing as
``B (1,0) = v`` with ``B = A^-1`` is the equivalent inverse convention.)
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import NotPrimitive
from .origami import Origami


@dataclass(frozen=True)
class IntMatrix2:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.det != 1:
            raise ValueError(f"determinant {self.det} != 1")

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other: "IntMatrix2") -> "IntMatrix2":
        return IntMatrix2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def apply(self, v: tuple[int, int]) -> tuple[int, int]:
        x, y = v
        return self.a * x + self.b * y, self.c * x + self.d * y

    def inverse(self) -> "IntMatrix2":
        return IntMatrix2(self.d, -self.b, -self.c, self.a)

    def rows(self) -> list[list[int]]:
        return [[self.a, self.b], [self.c, self.d]]


IDENTITY = IntMatrix2(1, 0, 0, 1)
T = IntMatrix2(1, 1, 0, 1)
T_INV = IntMatrix2(1, -1, 0, 1)
S = IntMatrix2(0, -1, 1, 0)
GENERATORS = {"T": T, "T-": T_INV, "S": S}


@dataclass(frozen=True, order=True)
class Direction:
    """Primitive integer vector in the upper half plane (or the positive x-axis)."""

    x: int
    y: int

    def __post_init__(self):
        if gcd(abs(self.x), abs(self.y)) != 1:
            raise NotPrimitive(f"({self.x},{self.y}) is not primitive")
        if not (self.y > 0 or (self.y == 0 and self.x > 0)):
            raise NotPrimitive(f"({self.x},{self.y}) is not in the upper half plane")

    @property
    def norm2(self) -> int:
        return self.x * self.x + self.y * self.y

    def as_tuple(self) -> tuple[int, int]:
        return self.x, self.y

    def __iter__(self):
        yield self.x
        yield self.y

    def __str__(self):
        return f"({self.x},{self.y})"


def as_direction(v) -> Direction:
    if isinstance(v, Direction):
        return v
    x, y = v
    return Direction(int(x), int(y))


def _bezout(x: int, y: int) -> tuple[int, int]:
    """Some ``(a, b)`` with ``a x + b y = 1`` (requires gcd 1)."""
    old_r, r = x, y
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    assert old_r == 1
    return old_s, old_t


def matrix_for_direction(v) -> IntMatrix2:
    """``A`` in SL(2,Z) with ``A v = (1, 0)``.

    The bottom row is forced to ``(-y, x)``; the top row ``(a, b)`` solves
    ``a x + b y = 1`` and is chosen with minimal ``|a| + |b|``, then minimal
    ``|a|``, then ``a >= 0``, so the result is deterministic.
    """
    v = as_direction(v)
    x, y = v.x, v.y
    a0, b0 = _bezout(x, y)
    # general solution (a0 + t*y, b0 - t*x); the optimum lies near either root
    cands = set()
    for num, den in ((-a0, y), (b0, x)):
        if den:
            t0 = num // den
            cands.update(range(t0 - 2, t0 + 3))
    if not cands:
        cands = {0}

    def key(t):
        a, b = a0 + t * y, b0 - t * x
        return abs(a) + abs(b), abs(a), a < 0, b < 0

    t = min(sorted(cands), key=key)
    return IntMatrix2(a0 + t * y, b0 - t * x, -y, x)


def decompose(m: IntMatrix2) -> list[str]:
    """Word over ``{"T", "T-", "S"}`` whose product equals ``m``.

    Euclid on the first column: left-multiplying by powers of T and by S
    reduces ``m`` to the identity; the word is the inverse of that reduction.
    Its length is linear in the sum of the partial quotients.
    """
    a, b, c, d = m.a, m.b, m.c, m.d
    ops: list[tuple[str, int]] = []  # reduction steps applied on the left

    def left(op, k=1):
        nonlocal a, b, c, d
        if op == "T":
            a, b = a + k * c, b + k * d
        else:  # S: [[0,-1],[1,0]] @ M
            a, b, c, d = -c, -d, a, b
        ops.append((op, k))

    while c != 0:
        q = -round_div(a, c)
        if q:
            left("T", q)
        left("S")
    if a == -1:
        left("S")
        left("S")
    if b:
        left("T", -b)
    assert (a, b, c, d) == (1, 0, 0, 1)
    word: list[str] = []
    for op, k in ops:
        if op == "T":
            word.extend(["T-" if k > 0 else "T"] * abs(k))
        else:
            word.extend(["S", "S", "S"])
    return _simplify(word)


def round_div(a: int, c: int) -> int:
    """Integer nearest to a / c (ties toward zero); keeps Euclid steps short."""
    q, r = divmod(a, c)
    if 2 * abs(r) > abs(c) or (2 * abs(r) == abs(c) and (q < 0)):
        q += 1
    return q


def _simplify(word: list[str]) -> list[str]:
    """Cancel T T-, and S^4 = 1 (S^2 = -1 is central but not the identity)."""
    out: list[str] = []
    for g in word:
        if out and {out[-1], g} == {"T", "T-"}:
            out.pop()
            continue
        out.append(g)
        if len(out) >= 4 and out[-4:] == ["S"] * 4:
            del out[-4:]
    return out


def word_product(word) -> IntMatrix2:
    m = IDENTITY
    for g in word:
        m = m @ GENERATORS[g]
    return m


def _apply_generator(a, b, g):
    """Return (new_a, new_b, ll_map) where ll_map[i] is the square of the input
    origami whose lower-left corner is the lower-left corner of new square i."""
    n = len(a)
    if g == "T":
        ainv = [0] * n
        for i, j in enumerate(a):
            ainv[j] = i
        return a, tuple(b[ainv[i]] for i in range(n)), None
    if g == "T-":
        return a, tuple(b[a[i]] for i in range(n)), None
    binv = [0] * n
    for i, j in enumerate(b):
        binv[j] = i
    return tuple(binv), a, b


def act_tracked(m: IntMatrix2, o: Origami) -> tuple[Origami, tuple[int, ...]]:
    """``m . o`` together with the lower-left-corner map into ``o``."""
    a, b = o.sigma_a.images, o.sigma_b.images
    ll = tuple(range(o.degree))
    for g in reversed(decompose(m)):
        a, b, step = _apply_generator(a, b, g)
        if step is not None:
            ll = tuple(ll[step[i]] for i in range(len(a)))
    return Origami.from_images(a, b), ll


def act(m: IntMatrix2, o: Origami) -> Origami:
    """The origami of the surface ``m . S`` (each square mapped by ``z -> m z``)."""
    return act_tracked(m, o)[0]
