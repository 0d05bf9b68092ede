import random
from fractions import Fraction

import pytest

from fconkit.errors import ConeViolation, SelfAdjointInput
from fconkit.reconstruct import (ConeOrder, GaussField, PositiveConeOracle, build_psi, complexify,
                                 epsilon_closure_check, field_order_check, identity_oracle,
                                 poly_identity_check, psi_homomorphism_check, random_rational_in,
                                 semifield_oracle)
from fconkit.scalars import BigReal, Gauss


def _pairs(n, seed=0):
    rng = random.Random(seed)
    return [(random_rational_in(rng, -50, 50), random_rational_in(rng, -50, 50)) for _ in range(n)]


def test_poly_identities():
    rep = poly_identity_check(_pairs(200))
    assert rep.passed


def test_psi_identity_oracle():
    rep = psi_homomorphism_check(build_psi(identity_oracle(64)), _pairs(200))
    assert rep.passed, rep.failures


def test_psi_semifield_oracle_small():
    rep = psi_homomorphism_check(build_psi(semifield_oracle(48)), _pairs(5, 1), tolerance_bits=20)
    assert rep.passed, rep.failures


def test_psi_upsilon_inverse():
    psi = build_psi(identity_oracle(64))
    for a in (Fraction(-7, 3), Fraction(0), Fraction(11, 8)):
        assert abs(psi.upsilon(psi(a)) - a) <= Fraction(1, 2 ** 60)


def test_psi_rejects_bad_cone():
    oracle = PositiveConeOracle(lambda a: a > 10, lambda a: BigReal.from_fraction(a, 30))
    with pytest.raises(ConeViolation):
        build_psi(oracle)(Fraction(0))


def test_cone_order_laws():
    rng = random.Random(2)
    triples = [tuple(random_rational_in(rng, -5, 5, 6) for _ in range(3)) for _ in range(300)]
    order = ConeOrder(lambda a: a >= 0)
    assert field_order_check(order, triples).passed
    broken = ConeOrder(lambda a: a >= 0 or a == -1)
    assert not field_order_check(broken, triples + [(Fraction(0), Fraction(-1), Fraction(0))]).passed


def test_epsilon_closure():
    samples = [Fraction(k, 7) for k in range(-20, 20)] + [Fraction(-1, 2 ** 80)]
    rep = epsilon_closure_check(lambda a: a >= 0, samples, budget=64)
    assert rep.passed
    assert rep.entry("closure")["undecided"] == 1
    punctured = epsilon_closure_check(lambda a: a >= 0 and a != Fraction(1, 7), samples)
    assert punctured.entry("closure")["witness"]["a"] == "1/7"


def test_complexify_exact():
    c = complexify(GaussField(), Gauss(1, 3))
    assert c.exact and c.r == Gauss(6) and c.i == Gauss(0, 1)
    p, q = c.decompose(Gauss(Fraction(2, 3), -5))
    assert (p, q) == (Gauss(Fraction(2, 3)), Gauss(-5))
    assert c.recompose(p, q) == Gauss(Fraction(2, 3), -5)
    z = c.psi_c(Gauss(Fraction(1, 2), 2))
    assert abs(z - complex(0.5, 2)) < 1e-12


def test_complexify_radius_is_twice_imaginary_part():
    # over Q(i) the norm of u - u^dagger is 4 im(u)^2, always a rational square
    for im in (Fraction(-2, 7), Fraction(5, 3)):
        c = complexify(GaussField(), Gauss(Fraction(1, 2), im))
        assert c.exact and c.r == Gauss(2 * abs(im))
        assert c.i * c.i == Gauss(-1)


def test_complexify_rejects_self_adjoint():
    with pytest.raises(SelfAdjointInput):
        complexify(GaussField(), Gauss(3))
