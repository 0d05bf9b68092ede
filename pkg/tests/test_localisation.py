from fractions import Fraction as Q

import pytest

from fconkit.errors import DimensionMismatch
from fconkit.fcon import Matrix
from fconkit.localisation import (Fraction, InvalidDenominator, comes_from_d, congruence_check,
                                  embed, frac, frac_compose, frac_dagger, frac_dsum, frac_equiv,
                                  frac_tensor, resolve, to_fraction)
from fconkit.scalars import Gauss

half = Q(1, 2)


def test_equivalence_is_cross_multiplication():
    p = frac(Matrix.scalar(half), half)
    assert frac_equiv(p, embed(Matrix.scalar(1)))
    assert not frac_equiv(p, frac(Matrix.scalar(half), 1))


def test_denominator_must_be_nonzero_and_in_disk():
    with pytest.raises(InvalidDenominator):
        frac(Matrix.scalar(half), 0)
    with pytest.raises(InvalidDenominator):
        frac(Matrix.scalar(half), 2)


def test_numerator_must_be_contraction():
    with pytest.raises(Exception):
        Fraction(Matrix.scalar(2), Gauss(1))


def test_direct_sum_cross_scales():
    p = frac(Matrix.scalar(half), half)
    q = frac(Matrix.scalar(Q(1, 3)), Q(1, 3))
    s = frac_dsum(p, q)
    assert s.denominator == Gauss(Q(1, 6))
    assert resolve(s).matrix == Matrix.identity(2)


def test_operations_resolve_like_field_matrices(rng):
    a = frac(Matrix.from_rows([[half, 0], [0, Q(1, 4)]]), Gauss(0, half))
    b = frac(Matrix.column([Q(1, 3), Q(2, 3)]), Q(3, 4))
    ra, rb = resolve(a).matrix, resolve(b).matrix
    assert resolve(frac_compose(a, b)).matrix == ra @ rb
    assert resolve(frac_tensor(a, b)).matrix == ra.tensor(rb)
    assert resolve(frac_dagger(a)).matrix == ra.dagger()
    with pytest.raises(DimensionMismatch):
        frac_compose(b, b)


def test_to_fraction_round_trip():
    m = Matrix.from_rows([[3, -1], [Gauss(0, 2), 5]])
    p = to_fraction(m)
    assert resolve(p).matrix == m
    assert not comes_from_d(m)
    assert comes_from_d(Matrix.column([Q(3, 5), Q(4, 5)]))


def test_congruence_small_run():
    rep = congruence_check(samples=60, seed=3)
    assert rep.passed, rep.failures
    assert rep.status_of("control") == "pass"


def test_congruence_is_deterministic():
    assert congruence_check(20, seed=5).to_json() == congruence_check(20, seed=5).to_json()
