import json
import random
from fractions import Fraction

import pytest

from fconkit.errors import NotBounded, NotMonotone
from fconkit.semifield import (EQUAL_ONE, GEQ_ONE, INCREASING, LEQ_ONE, MonotoneSequence, Pairs, PositiveScalars,
                               QPlus, Tropical, archimedean_witness, check_semifield_axioms,
                               direct_order, evaluate_to_real, explicit, geometric_order_decide,
                               inf_sum_geom_check, instance, pair_counterexample_suite, pos_scalar,
                               pos_scalar_leq, ps_add, ps_mul, sup_add_check, sup_bounded,
                               value_leq)
from fconkit.semifield.posscalars import squares_decomposition, witness_for_value


@pytest.mark.parametrize("name", ["qplus", "tropical", "pairs"])
def test_axioms_hold(name):
    rep = check_semifield_axioms(instance(name), samples=200, seed=1)
    assert rep.passed, rep.failures


def test_posscalars_axioms():
    rep = check_semifield_axioms(PositiveScalars(compact=True), samples=60, seed=2)
    assert rep.passed, rep.failures


def test_unknown_instance():
    with pytest.raises(ValueError):
        instance("octonions")


def test_pair_counterexample_values():
    rep = pair_counterexample_suite(samples=20)
    assert rep.passed, rep.failures
    assert json.loads(json.dumps(rep.to_json()))["expansion"] == rep.meta["expansion"]
    assert rep.status_of("infima_compatibility_fails") == "pass"


@pytest.mark.parametrize("u,expected", [(Fraction(1, 2), LEQ_ONE), (Fraction(1), EQUAL_ONE),
                                        (Fraction(3), GEQ_ONE)])
def test_geometric_decision(u, expected):
    S = QPlus()
    assert geometric_order_decide(S, u, 32).verdict == expected == direct_order(S, u)


def test_geometric_decision_rejects_zero():
    with pytest.raises(ValueError):
        geometric_order_decide(QPlus(), Fraction(0))


def test_archimedean_witness():
    assert archimedean_witness(QPlus(), Fraction(2), Fraction(1000)) == 10
    with pytest.raises(ValueError):
        archimedean_witness(QPlus(), Fraction(1, 2), Fraction(3))


def test_inf_sum_geometric():
    rep = inf_sum_geom_check(QPlus(), Fraction(2, 3), Fraction(1, 2), budget=40)
    assert rep.passed, rep.failures


def test_tropical_has_no_rational_evaluation():
    with pytest.raises(Exception):
        evaluate_to_real(Tropical(), Tropical().one())


def test_evaluate_sqrt_value():
    r = evaluate_to_real(PositiveScalars(), pos_scalar(Fraction(2)), 40).to_fraction()
    assert abs(r - Fraction(2)) <= Fraction(1, 2 ** 39)


def test_squares_decomposition():
    for n in (0, 1, 7, 12345, 10 ** 12 + 3):
        parts = squares_decomposition(n)
        assert sum(k * k for k in parts) == n
    w = witness_for_value(Fraction(7, 3))
    assert w.frobenius_sq() == Fraction(7, 3)


def test_witness_order_matches_values():
    rng = random.Random(4)
    for _ in range(50):
        p = pos_scalar(Fraction(rng.randint(0, 20), rng.randint(1, 5)))
        q = pos_scalar(Fraction(rng.randint(0, 20), rng.randint(1, 5)))
        d = pos_scalar_leq(p, q)
        assert bool(d) == value_leq(p, q)
        if d and not p.is_zero():
            assert d.witness @ q.witness == p.witness


def test_sum_and_product_values():
    p, q = pos_scalar(Fraction(2)), pos_scalar(Fraction(3, 4))
    assert ps_add(p, q).value == Fraction(11, 4)
    assert ps_mul(p, q).value == Fraction(3, 2)


def test_sup_bounded_and_errors():
    seq = MonotoneSequence(lambda n: pos_scalar(Fraction(n, n + 1)), INCREASING, 20,
                           limit=Fraction(1), label="n/(n+1)")
    assert sup_bounded(seq, pos_scalar(2)).value == 1
    with pytest.raises(NotBounded):
        sup_bounded(seq, pos_scalar(Fraction(1, 2)))
    down = explicit([pos_scalar(Fraction(1, n)) for n in range(1, 5)], INCREASING)
    with pytest.raises(NotMonotone):
        sup_bounded(down, pos_scalar(2))
    rep = sup_add_check(pos_scalar(Fraction(1, 3)), seq, pos_scalar(2))
    assert rep.passed, rep.failures


def test_pairs_partial_order():
    S = Pairs()
    assert S.leq((Fraction(1), Fraction(1)), (Fraction(2), Fraction(1)))
