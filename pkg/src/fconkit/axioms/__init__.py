"""Axiom verifier for finite fragments of the contraction model."""

from __future__ import annotations

import time

from ..report import FAIL, PASS
from .checks import (AXIOM_CHECKS, EXTRA_CHECKS, check_colimits, check_contraction_characterisation,
                     check_dagger_finite, check_dagger_simple, check_equalisers, check_hom_functor,
                     check_jointly_epic, check_kernels, check_nondegenerate, check_positivity,
                     check_separator, check_zero_object, contraction_characterisation_check)
from .model import Fragment, MatrixModel, corner_cases, default_fragment
from .mutants import AXIOM_MUTANTS, MODEL_MUTANTS


def run_all(fragment: Fragment | None = None, model: MatrixModel | None = None,
            precision: int = 40, only=None) -> dict:
    """Run every check; timings sit under their own key, outside the determinism contract."""
    fragment = fragment or default_fragment()
    model = model or MatrixModel()
    results, timings = {}, {}
    for key, check in AXIOM_CHECKS + EXTRA_CHECKS:
        if only is not None and key not in only:
            continue
        t0 = time.perf_counter()
        report = check(model, fragment, precision)
        timings[key] = round(time.perf_counter() - t0, 4)
        results[key] = report.to_json()
    failed = [k for k, r in results.items() if r["status"] == FAIL]
    return {
        "report": "axioms",
        "model": model.name,
        "seed": fragment.seed,
        "precision": precision,
        "status": FAIL if failed else PASS,
        "counts": {"checks": len(results), "passed": len(results) - len(failed),
                   "failed": len(failed)},
        "failed": failed,
        "results": results,
        "timings": timings,
    }


def mutation_sweep(fragment: Fragment | None = None, precision: int = 40) -> dict:
    """Run each mutant against the check it targets; every one must be caught."""
    fragment = fragment or default_fragment()
    out = {}
    for key, cls in AXIOM_MUTANTS.items():
        rep = run_all(fragment, cls(), precision, only={key})
        res = rep["results"][key]
        out[cls.name] = {"axiom": key, "caught": res["status"] == FAIL,
                         "witness": [e.get("witness") for e in res["checks"]
                                     if e["status"] == FAIL]}
    for label, cls in MODEL_MUTANTS.items():
        rep = run_all(fragment, cls(), precision)
        out[cls.name] = {"caught": rep["status"] == FAIL, "failed": rep["failed"]}
    return out


__all__ = [
    "Fragment", "MatrixModel", "corner_cases", "default_fragment", "run_all", "mutation_sweep",
    "AXIOM_MUTANTS", "MODEL_MUTANTS", "check_zero_object", "check_jointly_epic",
    "check_nondegenerate", "check_dagger_simple", "check_separator", "check_equalisers",
    "check_kernels", "check_positivity", "check_colimits", "check_dagger_finite",
    "check_contraction_characterisation", "check_hom_functor",
    "contraction_characterisation_check",
]
