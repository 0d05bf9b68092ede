"""One check per axiom, each returning a :class:`Report` with serialisable witnesses."""

from __future__ import annotations

import random
from fractions import Fraction

import mpmath

from ..colimits import (MONOS, SequentialDiagram, bounded_seq_colimit,
                        cocone_from_last, random_bounded_diagram, random_test_cocone,
                        universal_property_check)
from ..errors import FconError, NotMono
from ..fcon.approx import ApproxMatrix, working_precision
from ..fcon.generators import (random_contraction, random_epi_contraction, random_isometry,
                               random_unitary)
from ..fcon.matrix import Matrix, hstack, nullspace, rank
from ..fcon.ops import inner_approx, normalise_columns, power_iteration
from ..report import Report
from ..scalars import Gauss, random_gauss
from ..serialize import matrix_to_json
from .model import Fragment, MatrixModel, corner_cases


def _mj(m):
    return matrix_to_json(m) if isinstance(m, Matrix) else m


def _basis(n: int, k: int) -> Matrix:
    return Matrix.column([1 if r == k else 0 for r in range(n)])


def _random_vector(rng, n: int) -> Matrix:
    return Matrix.column([random_gauss(rng, 3, 4) for _ in range(n)])


def _pairs(objs, limit: int = 3):
    small = [d for d in objs if 0 < d <= limit] or [1]
    return [(x, y) for x in small for y in small]


# -- axiom 1 -----------------------------------------------------------------------------

def check_zero_object(model: MatrixModel, frag: Fragment, precision: int = 40) -> Report:
    report = Report("axiom-1-zero-object")
    z = model.zero_dim
    rng = frag.rng("zero")
    clash = None
    for x in frag.objects:
        for rows, cols in ((z, x), (x, z)):
            cands = corner_cases(cols, rows) + [random_contraction(rng, rows, cols)
                                                for _ in range(2)]
            maps = {c for c in cands if model.is_contraction(c)}
            if len(maps) > 1 and clash is None:
                a, b = sorted(maps, key=repr)[:2]
                clash = {"shape": [rows, cols], "first": _mj(a), "second": _mj(b)}
    report.add("hom_sets_singletons", clash is None, clash)
    bad = None
    for x, y in _pairs(frag.objects):
        inj = model.i1(x, y)
        expected = Matrix.identity(x).dsum(Matrix.zero(y, 0))
        if inj != expected or model.p1(x, y) != model.dagger(inj):
            bad = bad or {"dims": [x, y], "i1": _mj(inj)}
    report.add("injection_block_form", bad is None, bad)
    return report


# -- axiom 2 -----------------------------------------------------------------------------

def check_jointly_epic(model: MatrixModel, frag: Fragment, precision: int = 40) -> Report:
    report = Report("axiom-2-jointly-epic")
    rng = frag.rng("epic")
    bad = bad_pair = None
    for x, y in _pairs(frag.objects):
        a, b = model.i1(x, y), model.i2(x, y)
        r = rank(hstack([a, b]))
        if r != x + y:
            bad = bad or {"dims": [x, y], "rank": r}
        for _ in range(2):
            f = random_contraction(rng, 2, x + y)
            g = f + Matrix(2, x + y, [Gauss(0)] * (2 * (x + y) - 1) + [Gauss(Fraction(1, 16))])
            same = model.compose(f, a) == model.compose(g, a) and \
                model.compose(f, b) == model.compose(g, b)
            if same and f != g:
                bad_pair = bad_pair or {"dims": [x, y], "f": _mj(f), "g": _mj(g)}
    report.add("injections_span", bad is None, bad)
    report.add("injections_separate_maps", bad_pair is None, bad_pair)
    return report


# -- axiom 3 -----------------------------------------------------------------------------

def check_nondegenerate(model: MatrixModel, frag: Fragment, precision: int = 40) -> Report:
    report = Report("axiom-3-nondegenerate")
    for label, d in (("half_half", Matrix.column([Fraction(1, 2), Fraction(1, 2)])),
                     ("boundary_3_4_5", Matrix.column([Fraction(3, 5), Fraction(4, 5)]))):
        ok = model.is_contraction(d)
        parts = [model.compose(model.p1(1, 1), d), model.compose(model.p2(1, 1), d)]
        nonzero = all(not p.is_zero() for p in parts)
        report.add(label, ok and nonzero, None if ok and nonzero else
                   {"d": _mj(d), "contraction": ok, "components": [_mj(p) for p in parts]})
    return report


# -- axiom 4 -----------------------------------------------------------------------------

def check_dagger_simple(model: MatrixModel, frag: Fragment, precision: int = 40) -> Report:
    """Dagger-monic subobjects of the unit, counted by the exact rank bound."""
    report = Report("axiom-4-dagger-simple")
    unit = model.unit_dim
    rng = frag.rng("simple")
    bad_unit = None
    for d in frag.nonzero_objects()[:2]:
        a = random_contraction(rng, d, d)
        if model.tensor(model.identity(unit), a) != a:
            bad_unit = bad_unit or {"sample": _mj(a)}
    report.add("unit_law", bad_unit is None, bad_unit)
    # an isometry k -> unit has rank k, so k <= unit; the truncated identity realises each such k
    found = []
    for k in range(unit + 2):
        rep = Matrix(unit, k, [Gauss(1 if i == j else 0) for i in range(unit) for j in range(k)])
        if k <= unit and model.is_dagger_mono(rep):
            found.append(k)
    report.add("two_subobjects", len(found) == 2,
               {"dagger_monic_sources": found, "representative": _mj(Matrix.identity(found[-1]))}
               if found else {"dagger_monic_sources": found},
               sources=found)
    return report


# -- axiom 5 -----------------------------------------------------------------------------

def check_separator(model: MatrixModel, frag: Fragment, precision: int = 40) -> Report:
    report = Report("axiom-5-separator", quantifier="sampled universal")
    rng = frag.rng("separator")
    missed = None
    pairs = 0
    for x, y in _pairs(frag.objects, 2):
        n = x * y
        for t in range(max(2, frag.sample_budget // 4)):
            f = random_contraction(rng, 2, n)
            if t == 0:   # differ in the last basis column only
                g = f + Matrix(2, n, [Gauss(0)] * (2 * n - 1) + [Gauss(Fraction(1, 8))])
            else:
                g = random_contraction(rng, 2, n)
            if f == g:
                continue
            pairs += 1
            hit = None
            for i in range(x):
                for j in range(y):
                    v = model.tensor(_basis(x, i), _basis(y, j))
                    if model.compose(f, v) != model.compose(g, v):
                        hit = (i, j)
                        break
                if hit:
                    break
            if hit is None:
                missed = missed or {"dims": [x, y], "f": _mj(f), "g": _mj(g)}
    report.add("basis_tensors_separate", missed is None, missed, pairs=pairs)
    return report


# -- axioms 6 and 7 -----------------------------------------------------------------------

def check_equalisers(model: MatrixModel, frag: Fragment, precision: int = 40) -> Report:
    report = Report("axiom-6-equalisers")
    rng = frag.rng("equaliser")
    bad = None
    cases = []
    for d in frag.nonzero_objects()[:3]:
        f = random_contraction(rng, 2, d)
        cases += [(f, f), (f, Matrix.zero(2, d)), (f, random_contraction(rng, 2, d))]
        # agree on a chosen subspace so the equaliser is non-trivial
        k = random_isometry(rng, d, 1)
        g = f + random_contraction(rng, 2, d) @ (Matrix.identity(d) - k @ k.dagger())
        cases.append((f, g))
    tol = mpmath.ldexp(1, -precision)
    for f, g in cases:
        e = model.equaliser(f, g, precision)
        nullity = f.cols - rank(f - g)
        fe, ge = f @ e, g @ e
        if e.cols != nullity or fe.distance(ge) > tol or not e.is_isometry(precision):
            bad = bad or {"f": _mj(f), "g": _mj(g), "columns": e.cols, "nullity": nullity}
            continue
        # any h with f h = g h factors through e: h = e (e^dagger h)
        for h in nullspace(f - g):
            if (e @ (e.dagger() @ h)).distance(ApproxMatrix.from_exact(h, precision)) > tol * 16:
                bad = bad or {"f": _mj(f), "g": _mj(g), "unfactored": _mj(h)}
    report.add("equaliser_universal", bad is None, bad, cases=len(cases))
    return report


def check_kernels(model: MatrixModel, frag: Fragment, precision: int = 40) -> Report:
    report = Report("axiom-7-kernels")
    rng = frag.rng("kernel")
    monos = [Matrix.column([1, 0]), Matrix.identity(2),
             Matrix.column([Fraction(3, 5), Fraction(4, 5)])]
    for d in frag.nonzero_objects():
        if d >= 2:
            monos.append(random_isometry(rng, d, rng.randint(1, d - 1)))
    bad = None
    for m in monos:
        c = model.cokernel(m)
        if c.cols != m.rows or not (c @ m).is_zero():
            bad = bad or {"m": _mj(m), "reason": "cokernel does not kill m"}
            continue
        ker = model.kernel_basis(c)
        span = rank(hstack(ker)) if ker else 0
        joint = rank(hstack(ker + [m])) if ker else rank(m)
        if span != m.cols or joint != m.cols:
            bad = bad or {"m": _mj(m), "kernel_rank": span, "expected": m.cols}
            continue
        k = normalise_columns(ker, m.rows, precision)
        proj_k = k @ k.dagger()
        if proj_k.distance(ApproxMatrix.from_exact(m @ m.dagger(), precision)) > \
                mpmath.ldexp(1, -precision):
            bad = bad or {"m": _mj(m), "reason": "recovered subspace differs"}
    report.add("dagger_mono_is_kernel_of_cokernel", bad is None, bad, cases=len(monos))
    return report


# -- axiom 8 -----------------------------------------------------------------------------

def check_positivity(model: MatrixModel, frag: Fragment, precision: int = 40) -> Report:
    report = Report("axiom-8-positivity")
    rng = frag.rng("positivity")
    missing = spurious = None
    samples = 0
    for _ in range(max(3, frag.sample_budget // 3)):
        rows = rng.randint(1, 2)
        x = random_epi_contraction(rng, rows, rng.randint(rows, 3))
        for u in (Matrix.identity(rows), random_unitary(rng, rows)):
            samples += 1
            y = u @ x
            w = model.positivity_witness(x, y)
            if w is None or w @ x != y or not (model.is_dagger_mono(w) and model.is_dagger_epi(w)):
                missing = missing or {"x": _mj(x), "y": _mj(y)}
        for s in (2, Fraction(1, 2)):
            y = x.scale(s)
            if model.positivity_witness(x, y) is not None:
                spurious = spurious or {"x": _mj(x), "y": _mj(y)}
    report.add("equal_norms_give_isomorphism", missing is None, missing, samples=samples)
    report.add("unequal_norms_give_none", spurious is None, spurious)
    return report


# -- axiom 9 -----------------------------------------------------------------------------

def _corner_diagrams():
    ident = SequentialDiagram((2, 2, 2), (Matrix.identity(2), Matrix.identity(2)), MONOS)
    yield ident, cocone_from_last(ident, Matrix.identity(2))
    inc = SequentialDiagram((1, 2, 2), (Matrix.column([1, 0]), Matrix.identity(2)), MONOS)
    yield inc, cocone_from_last(inc, Matrix.from_rows([[1, 0], [0, 1], [0, 0]]))


def check_colimits(model: MatrixModel, frag: Fragment, precision: int = 40) -> Report:
    report = Report("axiom-9-colimits")
    rng = frag.rng("colimit")
    cases = list(_corner_diagrams())
    cases += [random_bounded_diagram(rng, 3, 3) for _ in range(max(2, frag.sample_budget // 4))]
    bad = None
    dims = []
    for diag, bound in cases:
        res = None
        try:
            res = model.colimit(diag, bound, precision)
            ref = bounded_seq_colimit(diag, bound, precision)
            tests = [random_test_cocone(rng, diag, 3) for _ in range(3)]
            up = universal_property_check(res, diag, tests)
            ok = up.passed and res.apex == ref.apex and res.apex <= bound.apex
            witness = None if ok else {"objects": list(diag.objects), "apex": res.apex,
                                       "failures": up.failures}
        except FconError as exc:
            ok, witness = False, {"objects": list(diag.objects), "error": str(exc)}
        dims.append(res.apex if ok and res is not None else None)
        if not ok:
            bad = bad or witness
    report.add("bounded_chains_have_colimits", bad is None, bad, apex_dimensions=dims)
    try:
        SequentialDiagram((2, 2), (Matrix.diag([1, 0]),), MONOS)
        rejected = False
    except NotMono:
        rejected = True
    report.add("non_mono_chain_rejected", rejected)
    return report


# -- axiom 10 ----------------------------------------------------------------------------

def check_dagger_finite(model: MatrixModel, frag: Fragment, precision: int = 40) -> Report:
    report = Report("axiom-10-dagger-finite")
    rng = frag.rng("finite")
    bad = None
    checked = 0
    for n in frag.nonzero_objects():
        for f in model.square_isometry_candidates(rng, n, frag.sample_budget):
            if not model.is_dagger_mono(f):
                continue
            checked += 1
            if not model.is_dagger_epi(f):
                bad = bad or {"f": _mj(f), "rank": rank(f), "dim": n}
    report.add("isometries_are_unitary", bad is None, bad, checked=checked,
               reason="a square isometry has full rank, so its left inverse is two-sided")
    return report


# -- contraction characterisation and hom functor -----------------------------------------------

def contraction_characterisation_check(model: MatrixModel, f: Matrix, samples: int,
                                       precision: int = 40, seed: int = 0) -> dict:
    """Compare certification with the inner-product bound; returns a status entry."""
    rng = random.Random(seed)
    certified = model.is_contraction(f)
    sigma, x, y = power_iteration(f, steps=60, precision=precision, seed=seed)
    slack = mpmath.ldexp(1, 5 - precision)
    with mpmath.workprec(working_precision(precision)):
        best = inner_approx(f, x, y) if x is not None else mpmath.mpf(0)
        for _ in range(samples):
            if f.cols == 0 or f.rows == 0:
                break
            u = mpmath.matrix([mpmath.mpc(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(f.cols)])
            v = mpmath.matrix([mpmath.mpc(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(f.rows)])
            best = max(best, inner_approx(f, u / mpmath.norm(u), v / mpmath.norm(v)))
        if certified:
            ok = best <= 1 + slack
        else:
            ok = best > 1
    return {"certified": certified, "max_inner": mpmath.nstr(best, 12), "ok": bool(ok)}


def check_contraction_characterisation(model: MatrixModel, frag: Fragment,
                                       precision: int = 40) -> Report:
    report = Report("contraction-characterisation")
    rng = frag.rng("characterisation")
    mats = list(frag.generators) + [Matrix.scalar(2), Matrix.scalar(Fraction(5, 4)),
                                    Matrix.from_rows([[Fraction(1, 2)] * 2] * 2)]
    for _ in range(frag.sample_budget // 2):
        a = random_contraction(rng, 2, 2)
        mats.append(a)
        mats.append(a.scale(3))
    bad = None
    for t, f in enumerate(mats):
        entry = contraction_characterisation_check(model, f, 4, precision, seed=t)
        if not entry["ok"]:
            bad = bad or {"f": _mj(f), **entry}
    report.add("certificate_matches_inner_products", bad is None, bad, matrices=len(mats))
    return report


def check_hom_functor(model: MatrixModel, frag: Fragment, precision: int = 40) -> Report:
    report = Report("hom-functor")
    rng = frag.rng("hom")

    def ip(a, b):
        return model.compose(model.dagger(a), b)[0, 0]

    bad_adj = bad_pos = bad_tensor = bad_dim = None
    for x, y in _pairs(frag.objects):
        f = random_contraction(rng, y, x)
        u, v = _random_vector(rng, x), _random_vector(rng, y)
        if ip(v, model.compose(f, u)) != ip(model.compose(model.dagger(f), v), u):
            bad_adj = bad_adj or {"f": _mj(f), "u": _mj(u), "v": _mj(v)}
        if model.compose(f, u) != f @ u:
            bad_adj = bad_adj or {"f": _mj(f), "u": _mj(u), "reason": "composition"}
        for w in (u, _basis(x, 0)):
            val = ip(w, w)
            if val.im != 0 or val.re <= 0:
                bad_pos = bad_pos or {"vector": _mj(w), "value": val.to_json()}
        if model.tensor(u, v) != u.tensor(v):
            bad_tensor = bad_tensor or {"u": _mj(u), "v": _mj(v)}
        span = rank(hstack([model.i1(x, y), model.i2(x, y)]))
        if span != x + y:
            bad_dim = bad_dim or {"dims": [x, y], "rank": span}
    report.add("adjoint_relation", bad_adj is None, bad_adj)
    report.add("inner_product_positive", bad_pos is None, bad_pos)
    report.add("tensor_is_kronecker", bad_tensor is None, bad_tensor)
    report.add("biproduct_dimension", bad_dim is None, bad_dim)
    return report


AXIOM_CHECKS = [
    ("1", check_zero_object),
    ("2", check_jointly_epic),
    ("3", check_nondegenerate),
    ("4", check_dagger_simple),
    ("5", check_separator),
    ("6", check_equalisers),
    ("7", check_kernels),
    ("8", check_positivity),
    ("9", check_colimits),
    ("10", check_dagger_finite),
]

EXTRA_CHECKS = [
    ("contraction_characterisation", check_contraction_characterisation),
    ("hom_functor", check_hom_functor),
]
