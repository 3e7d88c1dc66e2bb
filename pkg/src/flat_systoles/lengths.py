"""Exact arithmetic for lengths of the form  sum_r c_r * sqrt(r).

Every saddle connection on an origami has an integer developing vector, so
its length is ``m * sqrt(x^2 + y^2)``.  Sums of such numbers are kept as a map
from square-free radicand to integer coefficient.  Square roots of distinct
square-free integers are linearly independent over Q, which makes equality
testing exact; ordering uses a float fast path and falls back to increasing
decimal precision when two values agree to within ``FLOAT_TOL`` relative to
the size of their terms.
"""

from __future__ import annotations

import math
from decimal import Decimal, localcontext
from fractions import Fraction
from functools import lru_cache, total_ordering

FLOAT_TOL = 1e-9


@lru_cache(maxsize=None)
def split_square(n: int) -> tuple[int, int]:
    """Return ``(s, r)`` with ``n == s*s*r`` and ``r`` square-free."""
    if n <= 0:
        raise ValueError("expected a positive integer")
    s, r = 1, n
    p = 2
    while p * p <= r:
        while r % (p * p) == 0:
            r //= p * p
            s *= p
        p += 1
    return s, r


def _decimal_value(terms, prec: int) -> Decimal:
    with localcontext() as ctx:
        ctx.prec = prec
        total = Decimal(0)
        for r, c in terms:
            total += Decimal(c) * Decimal(r).sqrt()
        return total


@total_ordering
class ExactLength:
    """A finite sum of integer multiples of square roots."""

    __slots__ = ("terms", "_float", "_scale")

    def __init__(self, terms=()):
        acc: dict[int, int] = {}
        for r, c in terms:
            if c == 0:
                continue
            s, q = split_square(r)
            acc[q] = acc.get(q, 0) + c * s
        self.terms: tuple[tuple[int, int], ...] = tuple(
            sorted((r, c) for r, c in acc.items() if c != 0)
        )
        self._float = math.fsum(c * math.sqrt(r) for r, c in self.terms)
        # bound on |terms|, so float and decimal errors are relative to it
        self._scale = max(1.0, math.fsum(abs(c) * math.sqrt(r) for r, c in self.terms))

    # construction helpers

    @classmethod
    def integer(cls, k: int) -> "ExactLength":
        return cls(((1, k),))

    @classmethod
    def sqrt(cls, n: int) -> "ExactLength":
        return cls(((n, 1),))

    @classmethod
    def from_steps(cls, steps: int, direction: tuple[int, int]) -> "ExactLength":
        x, y = direction
        return cls(((x * x + y * y, steps),))

    @classmethod
    def coerce(cls, value) -> "ExactLength":
        if isinstance(value, ExactLength):
            return value
        if isinstance(value, int):
            return cls.integer(value)
        raise TypeError(f"cannot use {value!r} as an exact length")

    # arithmetic

    def __add__(self, other):
        other = ExactLength.coerce(other)
        return ExactLength(self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self):
        return ExactLength((r, -c) for r, c in self.terms)

    def __sub__(self, other):
        return self + (-ExactLength.coerce(other))

    def __mul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return ExactLength((r, c * k) for r, c in self.terms)

    __rmul__ = __mul__

    def squared(self) -> "ExactLength":
        out = []
        for i, (r1, c1) in enumerate(self.terms):
            out.append((1, c1 * c1 * r1))
            for r2, c2 in self.terms[i + 1:]:
                out.append((r1 * r2, 2 * c1 * c2))
        return ExactLength(out)

    # inspection

    def __float__(self) -> float:
        return self._float

    def is_zero(self) -> bool:
        return not self.terms

    def rational(self) -> Fraction | None:
        """The value as a Fraction when it is an integer, else None."""
        if not self.terms:
            return Fraction(0)
        if len(self.terms) == 1 and self.terms[0][0] == 1:
            return Fraction(self.terms[0][1])
        return None

    def sign(self) -> int:
        if not self.terms:
            return 0
        if abs(self._float) > FLOAT_TOL * self._scale:
            return 1 if self._float > 0 else -1
        # Nonzero by linear independence; refine until the sign is visible.
        prec = 40
        scale = Decimal(self._scale)
        while True:
            v = _decimal_value(self.terms, prec)
            if abs(v) > scale * Decimal(10) ** (-(prec - 10)):
                return 1 if v > 0 else -1
            prec *= 2

    # comparisons

    def __eq__(self, other):
        if isinstance(other, int):
            other = ExactLength.integer(other)
        if not isinstance(other, ExactLength):
            return NotImplemented
        return self.terms == other.terms

    def __lt__(self, other):
        if isinstance(other, int):
            other = ExactLength.integer(other)
        if not isinstance(other, ExactLength):
            return NotImplemented
        d = self._float - other._float
        tol = FLOAT_TOL * max(self._scale, other._scale)
        if d < -tol:
            return True
        if d > tol:
            return False
        return (self - other).sign() < 0

    def __hash__(self):
        return hash(self.terms)

    # rendering

    def __repr__(self):
        return f"ExactLength({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for r, c in self.terms:
            if r == 1:
                body = str(abs(c))
            elif abs(c) == 1:
                body = f"sqrt{r}"
            else:
                body = f"{abs(c)}*sqrt{r}"
            parts.append(("-" if c < 0 else "+", body))
        text = "".join(s + b for s, b in parts)
        return text[1:] if text[0] == "+" else text

    def decimal(self, digits: int = 12) -> str:
        return f"{self._float:.{digits}g}"

    def to_json(self) -> dict:
        sq = self.squared().rational()
        return {
            "exact": str(self),
            "terms": [[c, r] for r, c in self.terms],
            "value": self.decimal(),
            "squared": str(self.squared()),
            "squared_int": int(sq) if sq is not None else None,
        }
