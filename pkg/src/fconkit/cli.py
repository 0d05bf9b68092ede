"""Offline command-line front end: ``fconkit <verb> [options]``.

Every verb writes one JSON report (to ``--out`` or stdout).  Exit status is
0 when every check passes, 1 when a check fails (the report is still
written) and 2 on malformed input.
"""

from __future__ import annotations

import argparse
import random
import sys
from dataclasses import replace
from fractions import Fraction

from . import __version__
from .errors import FconError, ParseError
from .report import FAIL, PASS, Report
from .serialize import (SCHEMA_VERSION, Reader, diagram_to_json, dumps_report, load_file,
                        matrix_to_json)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(FconError):
    """Input parsed but does not satisfy a precondition of the requested verb."""


# -- helpers ---------------------------------------------------------------------------------

def _read(path):
    value, located = load_file(path)
    return value, Reader(located, path)


def _read_matrix(args):
    if not args.input:
        raise InputError("this verb needs --input with a matrix")
    value, reader = _read(args.input)
    if isinstance(value, dict) and "matrix" in value:
        value = value["matrix"]
    return reader.matrix(value, value)


def _status(*reports) -> str:
    for r in reports:
        status = r.to_json()["status"] if isinstance(r, Report) else r.get("status")
        if status == FAIL:
            return FAIL
    return PASS


# -- verbs ---------------------------------------------------------------------------------------

def cmd_check_axioms(args):
    from .axioms import Fragment, default_fragment, mutation_sweep, run_all
    frag = default_fragment(args.seed)
    if args.fragment:
        value, reader = _read(args.fragment)
        if not isinstance(value, dict):
            reader.fail("a fragment is a JSON object", value)
        gens = [reader.matrix(m, value) for m in value.get("generators", [])]
        objects = [reader.integer(o, value) for o in value.get("objects", frag.objects)]
        frag = Fragment(objects=objects, generators=gens or frag.generators,
                        sample_budget=reader.integer(value.get("sampleBudget", frag.sample_budget),
                                                     value),
                        seed=reader.integer(value.get("seed", args.seed), value))
    report = run_all(frag, precision=args.precision)
    if args.mutants:
        sweep = mutation_sweep(frag, args.precision)
        report["mutants"] = sweep
        if not all(m["caught"] for m in sweep.values()):
            report["status"] = FAIL
    return report["status"], report


def cmd_localise(args):
    from .localisation import (comes_from_d, congruence_check, frac_compose, frac_dagger,
                               frac_dsum, frac_equiv, frac_tensor, resolve, to_fraction)
    if not args.input:
        rep = congruence_check(args.samples, args.seed)
        return _status(rep), rep.to_json()
    value, reader = _read(args.input)
    if not isinstance(value, dict) or "op" not in value:
        reader.fail("localise input is an object with an 'op' field", value)
    op = value["op"]
    binary = {"equiv": frac_equiv, "compose": frac_compose, "tensor": frac_tensor,
              "dsum": frac_dsum}
    if op in binary:
        p, q = reader.fraction(value.get("left"), value), reader.fraction(value.get("right"), value)
        out = binary[op](p, q)
        result = {"equivalent": out} if op == "equiv" else {"fraction": out.to_json()}
    elif op == "dagger":
        result = {"fraction": frac_dagger(reader.fraction(value.get("fraction"), value)).to_json()}
    elif op == "resolve":
        m = resolve(reader.fraction(value.get("fraction"), value)).matrix
        result = {"matrix": matrix_to_json(m), "comes_from_d": comes_from_d(m)}
    elif op == "to-fraction":
        m = reader.matrix(value.get("matrix"), value)
        result = {"fraction": to_fraction(m).to_json(), "comes_from_d": comes_from_d(m)}
    else:
        reader.fail(f"unknown localise op {op!r}", value)
    return PASS, {"op": op, "result": result}


def _builtin_diagram(kind):
    from .colimits import EPIS, MONOS, REPEAT_LAST, SequentialDiagram, cocone_from_last
    from .fcon.matrix import Matrix
    if kind == EPIS:
        return SequentialDiagram.chain([Matrix.diag([1, Fraction(1, 2)])], EPIS,
                                       tail=REPEAT_LAST), None
    diag = SequentialDiagram((1, 2), (Matrix.column([1, 0]),), MONOS)
    return diag, cocone_from_last(diag, Matrix.from_rows([[1, 0], [0, 1], [0, 0]]))


def cmd_colimit(args):
    from .colimits import (EPIS, biproduct_preservation_check, bounded_seq_colimit,
                           epi_cocone_check, epi_seq_colimit, gram_monotone_check)
    if args.input:
        value, reader = _read(args.input)
        diag, bound = reader.diagram(value)
        if args.kind and diag.kind != args.kind:
            reader.fail(f"--kind {args.kind} but the diagram is of kind {diag.kind}", value)
    else:
        diag, bound = _builtin_diagram(args.kind or EPIS)
    if args.budget is not None:
        diag = replace(diag, budget=args.budget)
    out = {"diagram": diagram_to_json(diag, bound)}
    if diag.kind == EPIS:
        res = epi_seq_colimit(diag, args.precision, args.method)
        checks = [gram_monotone_check(diag), epi_cocone_check(res, diag)]
    else:
        if bound is None:
            raise InputError("a chain of monos needs a bounding cocone under 'bound'")
        res = bounded_seq_colimit(diag, bound, args.precision)
        checks = [biproduct_preservation_check(1, diag, bound, args.precision)]
    out["colimit"] = res.to_json()
    out["checks"] = [c.to_json() for c in checks]
    if not res.exact:
        out["flag"] = f"limit Gram detected by the Cauchy test at 2^-{args.precision}"
    return _status(*checks), out


def _semifield_element(S, value, reader):
    from .semifield import Pairs, PositiveScalars, RPlusApprox
    if isinstance(S, Pairs):
        if not isinstance(value, list) or len(value) != 2:
            reader.fail("a pair element is [x, y]", value)
        return S.element(reader.rational(value[0], value), reader.rational(value[1], value))
    q = reader.rational(value, value)
    if isinstance(S, (PositiveScalars, RPlusApprox)):
        return S.from_rational(q)
    return q


def cmd_semifield(args):
    from .semifield import (DECREASING, INCREASING, MonotoneSequence, archimedean_witness,
                            check_semifield_axioms, direct_order, evaluate_to_real,
                            geometric_order_decide, inf_decreasing, instance,
                            pair_counterexample_suite, sup_increasing)
    name = args.instance
    kwargs = {"precision": max(args.precision, 20)} if name == "rplus" else {}
    S = instance(name, **kwargs)
    suite = args.suite
    if suite == "counterexample":
        if name != "pairs":
            raise InputError("the counterexample suite belongs to the pair instance")
        rep = pair_counterexample_suite(seed=args.seed, budget=args.budget)
        return _status(rep), rep.to_json()
    if suite == "axioms":
        rep = check_semifield_axioms(S, args.samples, args.seed)
        return _status(rep), rep.to_json()
    if suite == "geometric":
        rng = random.Random(args.seed)
        disagree = []
        for _ in range(args.samples):
            u = S.from_rational(Fraction(rng.randint(1, 399), 100))
            d = geometric_order_decide(S, u, args.budget)
            if d.verdict != direct_order(S, u):
                disagree.append(S.to_json(u))
        rep = Report("geometric-order", instance=S.name, samples=args.samples)
        rep.add("agrees_with_direct_order", not disagree, disagree[:5])
        return _status(rep), rep.to_json()
    # sequence suites read an input file
    if not args.input:
        raise InputError(f"suite {suite!r} needs --input")
    value, reader = _read(args.input)
    if not isinstance(value, dict):
        reader.fail("semifield input is a JSON object", value)
    if suite == "evaluate":
        s = _semifield_element(S, value.get("element"), reader)
        return PASS, {"instance": S.name, "value": evaluate_to_real(S, s, args.precision).to_json()}
    if suite == "archimedean":
        a = _semifield_element(S, value.get("a"), reader)
        b = _semifield_element(S, value.get("b"), reader)
        return PASS, {"instance": S.name, "n": archimedean_witness(S, a, b, args.budget)}
    if suite == "extremum":
        seq_v = value.get("sequence")
        if not isinstance(seq_v, dict) or not isinstance(seq_v.get("terms"), list):
            reader.fail("sequence needs an explicit 'terms' list", value)
        terms = [_semifield_element(S, t, reader) for t in seq_v["terms"]]
        direction = seq_v.get("direction", DECREASING)
        if direction not in (DECREASING, INCREASING):
            reader.fail(f"unknown direction {direction!r}", seq_v)
        limit = seq_v.get("limit")
        limit = None if limit is None else _semifield_element(S, limit, reader)
        k = len(terms)
        seq = MonotoneSequence(lambda n: terms[min(n, k) - 1], direction,
                               reader.integer(value.get("budget", k), value),
                               None if limit is not None else k, limit, "input")
        ext = inf_decreasing(S, seq) if direction == DECREASING else sup_increasing(S, seq)
        return PASS, {"instance": S.name, "direction": direction, "extremum": S.to_json(ext)}
    raise InputError(f"unknown suite {suite!r}")


def cmd_reconstruct(args):
    from .reconstruct import (GaussField, build_psi, complexify, epsilon_closure_check,
                              field_order_check, field_order_from_cone, identity_oracle,
                              poly_identity_check, psi_homomorphism_check, random_rational_in,
                              semifield_oracle)
    rng = random.Random(args.seed)
    oracle = (semifield_oracle(args.precision) if args.oracle == "posscalars"
              else identity_oracle(max(64, args.precision + 24)))
    n = args.samples
    reports = []
    if args.suite in ("all", "poly"):
        pairs = [(random_rational_in(rng, -1000, 1000), random_rational_in(rng, -1000, 1000))
                 for _ in range(n)]
        reports.append(poly_identity_check(pairs))
    if args.suite in ("all", "psi"):
        pairs = [(random_rational_in(rng, -1000, 1000), random_rational_in(rng, -1000, 1000))
                 for _ in range(n if args.oracle == "identity" else min(n, 20))]
        reports.append(psi_homomorphism_check(build_psi(oracle), pairs))
    if args.suite in ("all", "order"):
        cone = lambda a: a >= 0
        triples = [tuple(random_rational_in(rng, -50, 50) for _ in range(3)) for _ in range(n)]
        reports.append(field_order_check(field_order_from_cone(cone), triples))
        samples = [random_rational_in(rng, -4, 4) for _ in range(n)] + [-Fraction(1, 1024)]
        reports.append(epsilon_closure_check(cone, samples, min(args.budget, 64)))
    out = {"oracle": oracle.name, "reports": [r.to_json() for r in reports]}
    if args.suite in ("all", "complexify"):
        from .scalars import Gauss
        u = Gauss(Fraction(1), Fraction(1))
        if args.input:
            value, reader = _read(args.input)
            u = reader.gauss(value.get("u") if isinstance(value, dict) else value, value)
        c = complexify(GaussField(), u, oracle, args.precision)
        p, q = c.decompose(u)
        rep = Report("complexify")
        rep.add("i_squared_is_minus_one", c.field.eq(c.field.mul(c.i, c.i),
                                                      c.field.from_real(-1)))
        rep.add("decompose_recomposes", c.field.eq(c.recompose(p, q), c.field.coerce(u)))
        rep.add("parts_self_adjoint", c.field.is_self_adjoint(p) and c.field.is_self_adjoint(q))
        reports.append(rep)
        out["complexify"] = {"r": _field_json(c.r), "i": _field_json(c.i), "exact": c.exact,
                             "report": rep.to_json()}
    return _status(*reports), out


def _field_json(x):
    from .scalars import Gauss
    if isinstance(x, Gauss):
        return x.to_json()
    import mpmath
    return [mpmath.nstr(mpmath.re(x), 20), mpmath.nstr(mpmath.im(x), 20)]


def cmd_dilate(args):
    from .fcon.approx import ApproxMatrix
    from .fcon.ops import ConMorphism, halmos_dilation
    f = ConMorphism.certify(_read_matrix(args))
    d = halmos_dilation(f, args.precision)
    tol = max(args.precision - 5, 1)
    rep = Report("dilation", tolerance=f"2^-{tol}")
    rep.add("unitary", d.u.is_unitary(tol))
    rep.add("m_isometry", d.m.is_isometry(tol))
    rep.add("e_coisometry", d.e.dagger().is_isometry(tol))
    em = d.e @ d.m
    rep.add("em_equals_f", em.close_to(ApproxMatrix.from_exact(f.matrix, args.precision), tol))
    return _status(rep), {"u": d.u.to_json(), "m": d.m.to_json(), "e": d.e.to_json(),
                          "checks": rep.to_json()}


def cmd_factor(args):
    from .fcon.approx import ApproxMatrix
    from .fcon.ops import epi_dagger_mono_factorise
    a = _read_matrix(args)
    fac = epi_dagger_mono_factorise(a, args.precision)
    tol = max(args.precision - 5, 1)
    rep = Report("factorisation", tolerance=f"2^-{tol}")
    rep.add("m_isometry", fac.m.is_isometry(tol) if fac.inner_dim else True)
    rep.add("me_equals_a", (fac.m @ fac.e).close_to(ApproxMatrix.from_exact(a, args.precision), tol))
    return _status(rep), {"m": fac.m.to_json(), "e": fac.e.to_json(),
                          "inner_dimension": fac.inner_dim, "checks": rep.to_json()}


VERBS = {
    "check-axioms": cmd_check_axioms,
    "localise": cmd_localise,
    "colimit": cmd_colimit,
    "semifield": cmd_semifield,
    "reconstruct": cmd_reconstruct,
    "dilate": cmd_dilate,
    "factor": cmd_factor,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, default=40, help="bits (default 40)")
    common.add_argument("--budget", type=int, default=64, help="sequence budget (default 64)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--input", help="JSON input file")

    parser = argparse.ArgumentParser(prog="fconkit", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"fconkit {__version__}")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("check-axioms", parents=[common], help="verify the ten axioms")
    p.add_argument("--fragment", help="fragment JSON (objects, generators, sampleBudget, seed)")
    p.add_argument("--mutants", action="store_true", help="also run the negative controls")

    p = sub.add_parser("localise", parents=[common], help="fraction calculus")
    p.add_argument("--samples", type=int, default=200)

    p = sub.add_parser("colimit", parents=[common], help="sequential colimits")
    p.add_argument("--kind", choices=["monos", "epis"])
    p.add_argument("--method", choices=["exact", "cauchy"], default="exact")

    p = sub.add_parser("semifield", parents=[common], help="ordered semifield suites")
    p.add_argument("--instance", default="qplus",
                   choices=["qplus", "rplus", "tropical", "pairs", "posscalars"])
    p.add_argument("--suite", default="axioms",
                   choices=["axioms", "counterexample", "geometric", "evaluate", "archimedean",
                            "extremum"])
    p.add_argument("--samples", type=int, default=200)

    p = sub.add_parser("reconstruct", parents=[common], help="field reconstruction from a cone")
    p.add_argument("--suite", default="all", choices=["all", "poly", "psi", "order", "complexify"])
    p.add_argument("--oracle", default="identity", choices=["identity", "posscalars"])
    p.add_argument("--samples", type=int, default=200)

    sub.add_parser("dilate", parents=[common], help="Halmos dilation of a contraction")
    sub.add_parser("factor", parents=[common], help="(epi, dagger mono) factorisation")
    return parser


def _envelope(args, status, result) -> dict:
    return {"schema": SCHEMA_VERSION, "tool": "fconkit", "version": __version__,
            "verb": args.verb, "seed": args.seed, "precision": args.precision,
            "budget": args.budget, "status": status, "result": result}


def _emit(args, report: dict) -> None:
    text = dumps_report(report)
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        status, result = VERBS[args.verb](args)
    except ParseError as exc:
        _emit(args, _envelope(args, "error", exc.to_json()))
        where = ":".join(str(x) for x in (exc.path, exc.line, exc.column) if x is not None)
        print(f"fconkit: {where + ': ' if where else ''}{exc}", file=sys.stderr)
        return EXIT_INPUT
    except (FconError, ValueError, ZeroDivisionError) as exc:
        _emit(args, _envelope(args, "error", {"error": type(exc).__name__, "message": str(exc)}))
        print(f"fconkit: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _emit(args, _envelope(args, status, result))
    return EXIT_OK if status == PASS else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
