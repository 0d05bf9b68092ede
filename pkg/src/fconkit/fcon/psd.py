"""Exact positive-semidefiniteness via LDL with full symmetric pivoting.

A Hermitian matrix over Q(i) is PSD iff the elimination below never meets a
negative pivot, and every time the largest remaining diagonal is zero the
whole remaining block is zero.  On success the factorisation is returned as
a certificate that can be re-checked by multiplication; on failure an exact
vector ``v`` with ``v^dagger M v < 0`` is returned instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import NotSquare
from ..scalars import Gauss
from .matrix import Matrix, permutation_matrix


@dataclass(frozen=True)
class LDLCertificate:
    """``P M P^T = L D L^dagger`` with ``L`` unit lower triangular, ``D >= 0`` diagonal."""

    perm: tuple
    lower: Matrix
    diag: tuple

    def verify(self, m: Matrix) -> bool:
        if any(d < 0 for d in self.diag):
            return False
        p = permutation_matrix(self.perm).dagger()
        d = Matrix.diag(list(self.diag))
        return p @ m @ p.dagger() == self.lower @ d @ self.lower.dagger()

    def to_json(self) -> dict:
        return {"perm": list(self.perm),
                "diag": [Gauss(x).to_json() for x in self.diag]}


@dataclass(frozen=True)
class PSDResult:
    psd: bool
    certificate: LDLCertificate | None = None
    negative_vector: Matrix | None = None

    def __bool__(self):
        return self.psd


def ldl_psd(m: Matrix) -> PSDResult:
    """Decide whether the Hermitian matrix ``m`` is positive semidefinite, exactly."""
    if not m.is_square():
        raise NotSquare("PSD test needs a square matrix")
    n = m.rows
    if m != m.dagger():
        # not Hermitian: v = e_j exposes a non-real diagonal, otherwise report no vector
        return PSDResult(False)
    s = [[m[i, j] for j in range(n)] for i in range(n)]
    order = list(range(n))           # order[k] = original index at position k
    lower = [[Gauss(1) if i == j else Gauss(0) for j in range(n)] for i in range(n)]
    diag = []

    def swap(a, b):
        order[a], order[b] = order[b], order[a]
        s[a], s[b] = s[b], s[a]
        for row in s:
            row[a], row[b] = row[b], row[a]
        for j in range(len(diag)):
            lower[a][j], lower[b][j] = lower[b][j], lower[a][j]

    for k in range(n):
        best = max(range(k, n), key=lambda i: (s[i][i].re, -i))
        piv = s[best][best].re
        if piv < 0:
            return PSDResult(False, negative_vector=_witness(lower, order, k, best - k, n, s, None))
        if piv == 0:
            for i in range(k, n):
                for j in range(k, n):
                    if s[i][j]:
                        return PSDResult(False, negative_vector=_witness(
                            lower, order, k, i - k, n, s, (j - k, s[i][j])))
            diag.extend([Fraction(0)] * (n - k))
            break
        swap(k, best)
        diag.append(piv)
        for i in range(k + 1, n):
            lower[i][k] = s[i][k] / piv
        for i in range(k + 1, n):
            if not s[i][k]:
                continue
            f = s[i][k] / piv
            for j in range(k + 1, n):
                if s[k][j]:
                    s[i][j] = s[i][j] - f * s[k][j]
        for i in range(k + 1, n):
            s[i][k] = Gauss(0)
            s[k][i] = Gauss(0)
    cert = LDLCertificate(tuple(order), Matrix.from_rows(lower, n) if n else Matrix(0, 0),
                          tuple(diag))
    return PSDResult(True, certificate=cert)


def _witness(lower, order, k, j, n, s, offdiag):
    """Exact ``v`` with ``v^dagger M v < 0`` from the current Schur complement.

    In permuted coordinates ``M' = L diag(D_k, S) L^dagger``; choosing
    ``w = L^{-dagger} u`` gives ``v^dagger M v = u^dagger diag(D_k, S) u``.
    """
    u = [Gauss(0)] * n
    u[k + j] = Gauss(1)
    if offdiag is not None:
        jj, sij = offdiag
        u[k + jj] = -sij.conj()
    # back substitution for L^dagger w = u (L unit lower triangular)
    w = [Gauss(0)] * n
    for i in reversed(range(n)):
        acc = u[i]
        for r in range(i + 1, n):
            if lower[r][i]:
                acc = acc - lower[r][i].conj() * w[r]
        w[i] = acc
    v = [Gauss(0)] * n
    for pos, orig in enumerate(order):
        v[orig] = w[pos]
    return Matrix.column(v)


def is_psd(m: Matrix) -> bool:
    return ldl_psd(m).psd


def defect(a: Matrix) -> Matrix:
    """``I - A^dagger A``."""
    return Matrix.identity(a.cols) - a.dagger() @ a
