from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from flat_systoles.lengths import ExactLength, split_square

coef = st.integers(-60, 60)
rad = st.integers(1, 200)


def sign_two_terms(a, p, b, q):
    """Exact sign of a*sqrt(p) + b*sqrt(q) by squaring."""
    if a >= 0 and b >= 0:
        return (a > 0 or b > 0) * 1
    if a <= 0 and b <= 0:
        return -1 if (a or b) else 0
    pos, neg = (a * a * p, b * b * q) if a > 0 else (b * b * q, a * a * p)
    return (pos > neg) - (pos < neg)


def test_split_square():
    assert split_square(72) == (6, 2)
    assert split_square(1) == (1, 1)
    with pytest.raises(ValueError):
        split_square(0)


def test_normalisation_and_rendering():
    assert ExactLength.sqrt(8) == ExactLength(((2, 2),))
    assert str(ExactLength.sqrt(8)) == "2*sqrt2"
    assert str(ExactLength.sqrt(17)) == "sqrt17"
    assert str(ExactLength.integer(3) - ExactLength.sqrt(2)) == "3-sqrt2"
    assert ExactLength.from_steps(3, (1, 1)) == 3 * ExactLength.sqrt(2)
    assert ExactLength.sqrt(17).squared().rational() == Fraction(17)
    assert (ExactLength.sqrt(2) + 1).squared() == ExactLength(((1, 3), (2, 2)))


def test_near_ties():
    # Pell convergents p/q of sqrt2: |p^2 - 2 q^2| = 1, alternating sides
    s = ExactLength.sqrt(2)
    pairs, (p, q) = [], (1, 1)
    while q < 10**15:
        p, q = p + 2 * q, p + q
        pairs.append((p, q))
    # the last few differ by less than the float tolerance
    assert abs(pairs[-1][0] - pairs[-1][1] * 2**0.5) < 1e-9
    for p, q in pairs:
        below = p * p < 2 * q * q
        assert (p < q * s) == below
        assert (q * s < p) == (not below)
        assert (q * s - p).sign() == (1 if below else -1)


def test_json():
    d = ExactLength.sqrt(17).to_json()
    assert d["squared_int"] == 17 and d["exact"] == "sqrt17"
    assert ExactLength.sqrt(2).to_json()["squared_int"] == 2


@given(coef, rad, coef, rad)
def test_sign_against_squaring(a, p, b, q):
    x = ExactLength(((p, a), (q, b)))
    expected = sign_two_terms(a, p, b, q)
    if x.is_zero():
        # a*sqrt(p) + b*sqrt(q) == 0 only when they cancel after normalising
        assert expected == 0
    else:
        assert x.sign() == expected != 0


@given(st.lists(st.tuples(rad, coef), max_size=4), st.lists(st.tuples(rad, coef), max_size=4))
def test_order_is_consistent(t1, t2):
    x, y = ExactLength(t1), ExactLength(t2)
    assert (x < y) + (y < x) + (x == y) == 1
    assert (x - y).sign() == (x > y) - (x < y)
    assert (x + y) - y == x
    if abs(float(x) - float(y)) > 1e-6:
        assert (x < y) == (float(x) < float(y))
