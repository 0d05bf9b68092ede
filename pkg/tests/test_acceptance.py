"""Acceptance criteria 1-11, each printed as one pass/fail line and held to 60 s.

Run with ``pytest tests/test_acceptance.py -v`` (lines appear inline) or
directly with ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import json
import math
import random
import sys
import time
from contextlib import contextmanager
from fractions import Fraction

import mpmath
import pytest

from fconkit.axioms import AXIOM_MUTANTS, default_fragment, mutation_sweep, run_all
from fconkit.colimits import (EPIS, REPEAT_LAST, SequentialDiagram, biproduct_preservation_check,
                              bounded_seq_colimit, epi_seq_colimit, induced_morphism,
                              random_bounded_diagram, random_test_cocone,
                              universal_property_check)
from fconkit.fcon import ApproxMatrix, Matrix, halmos_dilation, is_contraction
from fconkit.fcon.generators import (random_contraction, random_permutation, random_unitary,
                                      unimodular)
from fconkit.fcon.ops import power_iteration
from fconkit.localisation import congruence_check
from fconkit.reconstruct import (build_psi, identity_oracle, poly_identity_check,
                                 psi_homomorphism_check, random_rational_in)
from fconkit.semifield import (INCREASING, MonotoneSequence, QPlus, direct_order,
                               geometric_order_decide, pair_counterexample_suite, pos_scalar,
                               pos_scalar_leq, sup_add_check, value_leq)
from fconkit.semifield.posscalars import random_pos_scalar
from fconkit.serialize import stringify_ints

LIMIT_SECONDS = 60
half = Fraction(1, 2)


def _say(line: str, capsys=None) -> None:
    if capsys is None:
        print(line)
        return
    with capsys.disabled():
        print("\n" + line)


@contextmanager
def criterion(number: int, label: str, capsys=None):
    t0 = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        elapsed = time.perf_counter() - t0
        _say(f"FAIL criterion {number:>2} ({elapsed:5.1f}s) {label}: {type(exc).__name__}: {exc}",
             capsys)
        raise
    elapsed = time.perf_counter() - t0
    if elapsed >= LIMIT_SECONDS:
        _say(f"FAIL criterion {number:>2} ({elapsed:5.1f}s) {label}: over {LIMIT_SECONDS}s", capsys)
        pytest.fail(f"criterion {number} took {elapsed:.1f}s")
    _say(f"PASS criterion {number:>2} ({elapsed:5.1f}s) {label}", capsys)


def c01_fraction_congruence(capsys=None):
    with criterion(1, "fraction equivalence is a congruence on 1000 instances", capsys):
        rep = congruence_check(samples=1000, seed=0, max_dim=4)
        assert rep.passed, rep.failures
        assert rep.meta["samples"] == 1000


def c02_pair_counterexample(capsys=None):
    with criterion(2, "pair semifield: (2,1) != (1,1) and expansion (0,0)", capsys):
        rep = pair_counterexample_suite(samples=100, seed=0)
        assert rep.passed, rep.failures
        assert rep.meta["inf_of_one_plus"] != rep.meta["one_plus_inf"]
        for check in ("inf_one_plus_b_is_(2,1)", "one_plus_inf_b_is_(1,1)",
                      "product_expansion_is_(0,0)"):
            assert rep.status_of(check) == "pass", check


def c03_psi_homomorphism(capsys=None):
    with criterion(3, "psi additive and multiplicative within 2^-30 on 10^4 samples", capsys):
        rng = random.Random(0)
        pairs = [(random_rational_in(rng, -1000, 1000), random_rational_in(rng, -1000, 1000))
                 for _ in range(10_000)]
        rep = psi_homomorphism_check(build_psi(identity_oracle(64)), pairs, tolerance_bits=30)
        assert rep.passed, rep.failures
        for check in ("additive", "multiplicative"):
            entry = rep.entry(check)
            assert entry["samples"] == 10_000
            assert entry["max_error"] <= 2.0 ** -30
        poly_pairs = [(random_rational_in(rng, -1000, 1000, 30),
                       random_rational_in(rng, -1000, 1000, 30)) for _ in range(1000)]
        poly = poly_identity_check(poly_pairs)
        assert poly.passed, poly.failures


def c04_geometric_order(capsys=None):
    with criterion(4, "geometric decision matches direct comparison on 500 u in (0,4)", capsys):
        S = QPlus()
        rng = random.Random(4)
        us = [Fraction(1), Fraction(1, 2), Fraction(2)]
        while len(us) < 500:
            den = rng.randint(1, 60)
            u = Fraction(rng.randint(1, 4 * den - 1), den)
            us.append(u)
        for u in us:
            # the step identity is asserted exactly for n = 0..64 inside the decision
            decision = geometric_order_decide(S, u, budget=64)
            assert decision.steps_checked == 65
            assert decision.verdict == direct_order(S, u), (u, decision.verdict)


def c05_epi_colimit(capsys=None):
    with criterion(5, "epi colimits: apex 1 with Gram [1], apex 0, induced isometries", capsys):
        diag = SequentialDiagram.chain([Matrix.diag([1, half])], EPIS, tail=REPEAT_LAST)
        res = epi_seq_colimit(diag, precision=40)
        assert res.apex == 1
        assert res.apex_gram == Matrix.identity(1)
        e1 = Matrix.column([1, 0])
        assert (e1.dagger() @ res.gram_limit @ e1) == Matrix.identity(1)

        vanishing = SequentialDiagram.chain([Matrix.scalar(half)], EPIS, tail=REPEAT_LAST)
        assert epi_seq_colimit(vanishing).apex == 0

        rng = random.Random(5)
        for _ in range(5):
            u = Matrix.diag([unimodular(rng), unimodular(rng)])
            ind = induced_morphism(diag, diag, [u, u], precision=40, tol_bits=35)
            assert ind.isometry and ind.report.passed, ind.report.to_json()
        wide = SequentialDiagram.chain([Matrix.diag([1, half, 1])], EPIS, tail=REPEAT_LAST)
        incl = Matrix.from_rows([[1, 0], [0, 1], [0, 0]])
        ind = induced_morphism(diag, wide, [incl, incl], precision=40, tol_bits=35)
        assert ind.isometry and ind.report.passed, ind.report.to_json()
        assert ind.approx.is_isometry(35)


def c06_bounded_colimit(capsys=None):
    with criterion(6, "100 bounded diagrams: universal property and biproduct comparison", capsys):
        rng = random.Random(6)
        for _ in range(100):
            diag, bound = random_bounded_diagram(rng, max_length=5, max_dim=4)
            res = bounded_seq_colimit(diag, bound)
            cocones = [random_test_cocone(rng, diag) for _ in range(10)]
            rep = universal_property_check(res, diag, cocones)
            assert rep.passed, rep.failures
            bp = biproduct_preservation_check(rng.randint(1, 3), diag, bound, tol_bits=35)
            assert bp.status_of("comparison_unitary_within_tolerance") == "pass"
            assert bp.passed, bp.failures


def c07_axiom_suite(capsys=None):
    with criterion(7, "axioms pass for 10 seeds; 10 mutants caught with JSON witnesses", capsys):
        for seed in range(10):
            rep = run_all(default_fragment(seed))
            assert rep["status"] == "pass", (seed, rep["failed"])
        sweep = mutation_sweep(default_fragment(0))
        per_axiom = [e for e in sweep.values() if "axiom" in e]
        assert len(per_axiom) == len(AXIOM_MUTANTS) == 10
        for entry in per_axiom:
            assert entry["caught"], entry
            assert any(w is not None for w in entry["witness"]), entry
            json.dumps(stringify_ints(entry))


def c08_dagger_finite(capsys=None):
    with criterion(8, "1000 exact square isometries are unitary", capsys):
        rng = random.Random(8)
        for k in range(1000):
            n = rng.randint(1, 4)
            f = random_permutation(rng, n) if k % 3 == 0 else random_unitary(rng, n)
            ident = Matrix.identity(n)
            assert f.dagger() @ f == ident
            assert f @ f.dagger() == ident


def _norm_oracle(a: Matrix) -> bool:
    """Operator norm via power iteration, checked against a sampled inner product."""
    sigma, x, y = power_iteration(a, steps=300, precision=60, seed=0)
    if x is not None:
        # |<a x, y>| is a lower bound for the norm attained by the iterate
        with mpmath.workprec(100):
            inner = abs(sum(mpmath.conj(y[i]) * sum(a[i, j].to_mpc() * x[j] for j in range(a.cols))
                            for i in range(a.rows)))
        assert inner <= sigma + mpmath.mpf(2) ** -25
    return sigma <= 1 + mpmath.mpf(2) ** -25


def _scaled_above_one(a: Matrix) -> Matrix:
    # ||a|| >= ||a||_F / sqrt(min dim); aim the Frobenius norm at twice that
    k = min(a.rows, a.cols)
    fro = a.frobenius_sq()
    c = Fraction(math.isqrt(math.ceil(4 * k / fro)) + 1)
    return a.scale(c)


def c09_contraction_characterisation(capsys=None):
    with criterion(9, "is_contraction agrees with the norm oracle on 200 matrices", capsys):
        rng = random.Random(9)
        disagreements = []
        for k in range(200):
            rows, cols = rng.randint(1, 4), rng.randint(1, 4)
            a = random_contraction(rng, rows, cols)
            if k % 2:
                while a.is_zero():
                    a = random_contraction(rng, rows, cols)
                a = _scaled_above_one(a)
            certified = is_contraction(a)
            assert certified == (k % 2 == 0)
            if certified != _norm_oracle(a):
                disagreements.append(k)
        assert not disagreements, disagreements


def c10_dilation(capsys=None):
    with criterion(10, "200 Halmos dilations unitary and e m = f within 2^-35", capsys):
        rng = random.Random(10)
        for _ in range(200):
            f = random_contraction(rng, rng.randint(1, 3), rng.randint(1, 3))
            d = halmos_dilation(f, precision=40)
            assert d.u.is_unitary(35)
            assert (d.e @ d.m).close_to(ApproxMatrix.from_exact(f, 40), 35)
            assert d.m.is_isometry(35) and d.e.dagger().is_isometry(35)


def c11_positive_scalars(capsys=None):
    with criterion(11, "witness order matches values; a + sup = sup(a + b_n)", capsys):
        rng = random.Random(11)
        for _ in range(1000):
            p, q = random_pos_scalar(rng), random_pos_scalar(rng)
            if rng.random() < 0.1:
                q = pos_scalar(p.value)
            dom = pos_scalar_leq(p, q, certify="ldl")
            assert bool(dom) == value_leq(p, q)
            if dom and not q.is_zero():
                assert dom.witness @ q.witness == p.witness
        for _ in range(100):
            top = Fraction(rng.randint(1, 20), rng.randint(1, 5))
            c = rng.randint(1, 5)
            seq = MonotoneSequence(lambda n, top=top, c=c: pos_scalar(top * n / (n + c)),
                                   INCREASING, 24, limit=pos_scalar(top), label="top n/(n+c)")
            a = random_pos_scalar(rng, zero_rate=0)
            bound = pos_scalar(top + rng.randint(0, 3))
            rep = sup_add_check(a, seq, bound)
            assert rep.passed, rep.failures


CRITERIA = [c01_fraction_congruence, c02_pair_counterexample, c03_psi_homomorphism,
            c04_geometric_order, c05_epi_colimit, c06_bounded_colimit,
            c07_axiom_suite, c08_dagger_finite, c09_contraction_characterisation,
            c10_dilation, c11_positive_scalars]


@pytest.mark.parametrize("check", CRITERIA, ids=[fn.__name__ for fn in CRITERIA])
def test_criterion(check, capsys):
    check(capsys)


if __name__ == "__main__":
    failed = 0
    for fn in CRITERIA:
        try:
            fn()
        except Exception:
            failed += 1
    sys.exit(1 if failed else 0)
