"""Operations of the contraction category: certification, kernels, factorisations, dilation."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

import mpmath

from ..errors import (DimensionMismatch, NotContraction, NotEpi, NotOrthonormalSystem, NotPSD,
                      NotSquare)
from .approx import ApproxMatrix, working_precision
from .matrix import (Matrix, column_space, gram_schmidt_exact, hstack, inverse, nullspace, rank,
                     vstack)
from .psd import LDLCertificate, PSDResult, defect, ldl_psd


# -- predicates -------------------------------------------------------------------

def contraction_test(a: Matrix) -> PSDResult:
    """Exact decision of ``I - A^dagger A >= 0`` with certificate or negative vector."""
    return ldl_psd(defect(a))


def is_contraction(a: Matrix) -> bool:
    return contraction_test(a).psd


def is_dagger_mono(a: Matrix) -> bool:
    return a.dagger() @ a == Matrix.identity(a.cols)


def is_dagger_epi(a: Matrix) -> bool:
    return a @ a.dagger() == Matrix.identity(a.rows)


def is_unitary(a: Matrix) -> bool:
    return a.is_square() and is_dagger_mono(a) and is_dagger_epi(a)


def is_epi(a: Matrix) -> bool:
    return rank(a) == a.rows


def is_mono(a: Matrix) -> bool:
    return rank(a) == a.cols


@dataclass(frozen=True)
class ConMorphism:
    """A matrix together with an exact certificate that it is a contraction."""

    matrix: Matrix
    certificate: LDLCertificate

    @classmethod
    def certify(cls, a: Matrix) -> "ConMorphism":
        res = contraction_test(a)
        if not res.psd:
            raise NotContraction(f"I - A^dagger A is not PSD for {a!r}")
        return cls(a, res.certificate)

    @property
    def rows(self):
        return self.matrix.rows

    @property
    def cols(self):
        return self.matrix.cols

    def verify(self) -> bool:
        return self.certificate.verify(defect(self.matrix))


def as_matrix(f) -> Matrix:
    return f.matrix if isinstance(f, ConMorphism) else f


# -- orthonormal columns ------------------------------------------------------------

def normalise_columns(vectors: Sequence[Matrix], rows: int, precision: int) -> ApproxMatrix:
    """``w / sqrt(w^dagger w)`` for each exact column ``w``; the only inexact step."""
    with mpmath.workprec(working_precision(precision)):
        cols = []
        for w in vectors:
            n = (w.dagger() @ w)[0, 0].re
            s = mpmath.sqrt(mpmath.mpf(n.numerator) / n.denominator)
            cols.append(ApproxMatrix(rows, 1, [e.to_mpc() / s for e in w.entries], precision))
        return ApproxMatrix.from_columns(cols, rows, precision)


def orthogonal_kernel_basis(a: Matrix) -> list:
    """Exact pairwise-orthogonal basis of ``ker a`` (not normalised)."""
    return gram_schmidt_exact(nullspace(a))


def dagger_kernel(a: Matrix, precision: int = 40) -> ApproxMatrix:
    """Isometry ``k`` onto ``ker a``: columns orthonormal, column count = nullity."""
    a = as_matrix(a)
    return normalise_columns(orthogonal_kernel_basis(a), a.cols, precision)


def dagger_equaliser(f: Matrix, g: Matrix, precision: int = 40) -> ApproxMatrix:
    f, g = as_matrix(f), as_matrix(g)
    if f.shape != g.shape:
        raise DimensionMismatch(f"cannot equalise {f.shape} and {g.shape}")
    return dagger_kernel(f - g, precision)


def dagger_cokernel_exact(m: Matrix) -> Matrix:
    """Exact matrix whose rows span the orthogonal complement of the columns of ``m``.

    Rows are orthogonal but not normalised; ``coker(m) @ m == 0``.
    """
    basis = orthogonal_kernel_basis(m.dagger())
    if not basis:
        return Matrix(0, m.rows)
    return vstack([b.dagger() for b in basis])


@dataclass(frozen=True)
class Factorisation:
    m: ApproxMatrix
    e: ApproxMatrix
    inner_dim: int


def epi_dagger_mono_factorise(a: Matrix, precision: int = 40) -> Factorisation:
    """``a = m e`` with ``m`` an isometry onto the image and ``e`` of full row rank."""
    a = as_matrix(a)
    ws = gram_schmidt_exact(column_space(a))
    m = normalise_columns(ws, a.rows, precision)
    e = m.dagger() @ a
    return Factorisation(m, e, len(ws))


def matrix_sqrt_psd(p: Matrix, precision: int = 40) -> ApproxMatrix:
    """Hermitian square root of an exactly PSD matrix."""
    p = as_matrix(p)
    if not p.is_square():
        raise NotSquare("square root of a non-square matrix")
    if not p.is_hermitian() or not ldl_psd(p).psd:
        raise NotPSD("matrix is not Hermitian positive semidefinite")
    n = p.rows
    if n == 0:
        return ApproxMatrix(0, 0, [], precision)
    diag_only = all(p[i, j] == 0 for i in range(n) for j in range(n) if i != j)
    with mpmath.workprec(working_precision(precision)):
        if diag_only:
            out = [mpmath.mpc(0)] * (n * n)
            for i in range(n):
                d = p[i, i].re
                out[i * n + i] = mpmath.mpc(mpmath.sqrt(mpmath.mpf(d.numerator) / d.denominator))
            return ApproxMatrix(n, n, out, precision)
        mat = mpmath.matrix(n, n)
        for i in range(n):
            for j in range(n):
                mat[i, j] = p[i, j].to_mpc()
        evals, q = mpmath.eighe(mat)
        roots = [mpmath.sqrt(max(mpmath.re(v), 0)) for v in evals]
        out = []
        for i in range(n):
            for j in range(n):
                out.append(mpmath.mpc(mpmath.fsum(q[i, k] * roots[k] * mpmath.conj(q[j, k])
                                                  for k in range(n))))
        return ApproxMatrix(n, n, out, precision)


@dataclass(frozen=True)
class Dilation:
    u: ApproxMatrix
    m: ApproxMatrix
    e: ApproxMatrix


def halmos_dilation(f, precision: int = 40) -> Dilation:
    """Unitary ``U = [[f, D_{f^dagger}], [D_f, -f^dagger]]`` with ``f = e m``.

    ``m`` is the first biproduct injection (an isometry) and ``e`` the first
    block row of ``U`` (a co-isometry).
    """
    if isinstance(f, ConMorphism):
        a = f.matrix
    else:
        a = f
        if not is_contraction(a):
            raise NotContraction("halmos dilation needs a contraction")
    rows, cols = a.rows, a.cols
    d_f = matrix_sqrt_psd(defect(a), precision)                 # cols x cols
    d_fd = matrix_sqrt_psd(defect(a.dagger()), precision)       # rows x rows
    fa = ApproxMatrix.from_exact(a, precision)
    fda = ApproxMatrix.from_exact(a.dagger(), precision)
    n = rows + cols
    out = []
    for i in range(n):
        for j in range(n):
            if i < rows:
                out.append(fa[i, j] if j < cols else d_fd[i, j - cols])
            else:
                out.append(d_f[i - rows, j] if j < cols else -fda[i - rows, j - cols])
    u = ApproxMatrix(n, n, out, precision)
    m = ApproxMatrix.from_exact(vstack([Matrix.identity(cols), Matrix.zero(rows, cols)]), precision)
    e = u.submatrix(range(rows), range(n))
    return Dilation(u, m, e)


def dagger_finite_check(f: Matrix) -> bool:
    """For square ``f``: ``f^dagger f = 1`` implies ``f f^dagger = 1``."""
    f = as_matrix(f)
    if not f.is_square():
        raise NotSquare("dagger finiteness is about endomorphisms")
    if not is_dagger_mono(f):
        return True
    return is_dagger_epi(f)


def orthonormal_decompose(system: Sequence[Matrix], dim: int, precision: int = 40) -> ApproxMatrix:
    """Unitary ``U : X -> I^n`` whose adjoint starts with the given orthonormal columns."""
    system = [as_matrix(v) for v in system]
    for k, v in enumerate(system):
        if v.shape != (dim, 1):
            raise NotOrthonormalSystem(f"vector {k} has shape {v.shape}, expected ({dim}, 1)")
        for j, w in enumerate(system[:k + 1]):
            ip = (w.dagger() @ v)[0, 0]
            if ip != (1 if j == k else 0):
                raise NotOrthonormalSystem(f"<v{j}|v{k}> = {ip}")
    extra = []
    span = list(system)
    for i in range(dim):
        w = Matrix.column([1 if r == i else 0 for r in range(dim)])
        for u in span:
            uu = (u.dagger() @ u)[0, 0]
            w = w - u.scale((u.dagger() @ w)[0, 0] / uu)
        if not w.is_zero():
            span.append(w)
            extra.append(w)
    cols = [ApproxMatrix.from_exact(v, precision) for v in system]
    if extra:
        normalised = normalise_columns(extra, dim, precision)
        cols.extend(normalised.col(j) for j in range(normalised.cols))
    basis = ApproxMatrix.from_columns(cols, dim, precision)
    return basis.dagger()


def positivity_witness(x: Matrix, y: Matrix) -> Matrix | None:
    """Exact isomorphism ``f`` with ``y = f x`` when ``x^dagger x = y^dagger y``, else None."""
    x, y = as_matrix(x), as_matrix(y)
    if x.cols != y.cols:
        raise DimensionMismatch("x and y need a common domain")
    if not is_epi(x) or not is_epi(y):
        raise NotEpi("positivity witness is defined for epis")
    if x.dagger() @ x != y.dagger() @ y:
        return None
    f = y @ x.dagger() @ inverse(x @ x.dagger())
    if f @ x != y:
        return None
    return f


# -- approximate norm probes ------------------------------------------------------

def power_iteration(a: Matrix, steps: int = 200, precision: int = 60, seed: int = 0):
    """Estimate the top singular pair of ``a``.

    Returns ``(sigma, x, y)`` with unit vectors ``x`` (domain) and ``y``
    (codomain) such that ``<a x, y> ~= sigma``.
    """
    rng = random.Random(seed)
    n, m = a.cols, a.rows
    if n == 0 or m == 0:
        return mpmath.mpf(0), None, None
    with mpmath.workprec(working_precision(precision)):
        A = mpmath.matrix(m, n)
        for i in range(m):
            for j in range(n):
                A[i, j] = a[i, j].to_mpc()
        AH = A.H
        x = mpmath.matrix([mpmath.mpc(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(n)])
        x = x / mpmath.norm(x)
        for _ in range(steps):
            z = AH * (A * x)
            nz = mpmath.norm(z)
            if nz == 0:
                break
            x = z / nz
        ax = A * x
        sigma = mpmath.norm(ax)
        y = ax / sigma if sigma else ax
        return sigma, x, y


def inner_approx(a: Matrix, x, y):
    """``|<a x, y>|`` for mpmath vectors ``x``, ``y``."""
    m, n = a.rows, a.cols
    acc = mpmath.mpc(0)
    for i in range(m):
        row = mpmath.fsum(a[i, j].to_mpc() * x[j] for j in range(n))
        acc += mpmath.conj(y[i]) * row
    return abs(acc)


def block_matrix(blocks):
    return vstack([hstack(r) for r in blocks])
