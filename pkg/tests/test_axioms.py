import json

from fconkit.axioms import (AXIOM_MUTANTS, MODEL_MUTANTS, MatrixModel, corner_cases,
                            default_fragment, mutation_sweep, run_all)
from fconkit.fcon import is_contraction
from fconkit.serialize import stringify_ints


def strip_timings(report):
    return {k: v for k, v in report.items() if k != "timings"}


def test_run_all_passes_on_model():
    rep = run_all(default_fragment(0))
    assert rep["status"] == "pass", rep["failed"]
    assert rep["counts"]["checks"] >= 10


def test_run_all_is_deterministic():
    a, b = run_all(default_fragment(3)), run_all(default_fragment(3))
    assert strip_timings(a) == strip_timings(b)


def test_every_mutant_is_caught_with_serialisable_witness():
    sweep = mutation_sweep(default_fragment(1))
    assert len(sweep) == len(AXIOM_MUTANTS) + len(MODEL_MUTANTS)
    for name, entry in sweep.items():
        assert entry["caught"], name
        json.dumps(stringify_ints(entry))


def test_only_filter():
    rep = run_all(default_fragment(0), MatrixModel(), only={"4"})
    assert list(rep["results"]) == ["4"]


def test_corner_cases_are_contractions():
    for n, m in ((1, 1), (2, 2), (3, 3), (2, 3)):
        assert all(is_contraction(a) for a in corner_cases(n, m))
