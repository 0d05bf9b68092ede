from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from fconkit.scalars import BigReal, Gauss, exact_sqrt, sqrt_pos

rationals = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 100)
gaussians = st.builds(Gauss, rationals, rationals)


@given(gaussians, gaussians, gaussians)
def test_field_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    if b:
        assert (a / b) * b == a


@given(gaussians, gaussians)
def test_conjugation_is_multiplicative(a, b):
    assert (a * b).conj() == a.conj() * b.conj()
    assert (a * a.conj()).im == 0
    assert a.norm_sq() == (a * a.conj()).re


def test_disk_boundary():
    assert Gauss(Fraction(3, 5), Fraction(4, 5)).in_disk()
    assert not Gauss(Fraction(3, 5), Fraction(5, 6)).in_disk()
    assert Gauss(1).norm_sq() == 1


def test_inverse_of_unit():
    u = Gauss(Fraction(3, 5), Fraction(4, 5))
    assert u.inverse() == u.conj()
    with pytest.raises(ZeroDivisionError):
        Gauss(0).inverse()


@given(gaussians)
def test_json_round_trip(a):
    assert Gauss.from_json(a.to_json()) == a
    assert all(isinstance(x, str) for x in a.to_json())


def test_json_rejects_bad_denominator():
    with pytest.raises(ValueError):
        Gauss.from_json(["1", "0", "0", "1"])


@pytest.mark.parametrize("r", [Fraction(2), Fraction(1, 3), Fraction(10 ** 30 + 7)])
def test_sqrt_pos_bracket(r):
    p = 60
    s = sqrt_pos(r, p).to_fraction()
    assert s * s <= r
    hi = s + Fraction(1, 2 ** (p + 2))
    assert hi * hi > r


def test_exact_sqrt():
    assert exact_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert exact_sqrt(Fraction(2)) is None


def test_bigreal_rounding_and_order():
    x = BigReal.from_fraction(Fraction(1, 3), 20)
    assert abs(x.to_fraction() - Fraction(1, 3)) <= Fraction(1, 2 ** 21)
    y = BigReal.from_fraction(Fraction(1, 2), 20)
    assert x < y and (y - x).to_fraction() > 0
    assert (x + y).to_fraction() == x.to_fraction() + y.to_fraction()
