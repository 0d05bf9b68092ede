from fractions import Fraction

import mpmath
import pytest

from fconkit.errors import DimensionMismatch, NotEpi, NotOrthonormalSystem, NotPSD, NotSquare
from fconkit.fcon import (ApproxMatrix, ConMorphism, Matrix, dagger_equaliser, dagger_finite_check,
                          dagger_kernel, epi_dagger_mono_factorise, halmos_dilation, is_contraction,
                          is_dagger_mono, ldl_psd, matrix_sqrt_psd, orthonormal_decompose,
                          positivity_witness, rank)
from fconkit.fcon.generators import random_contraction, random_unitary
from fconkit.fcon.matrix import i1, p1, symmetry_tensor
from fconkit.fcon.ops import dagger_cokernel_exact, power_iteration
from fconkit.scalars import Gauss

half = Fraction(1, 2)


def test_dagger_and_tensor_laws(rng):
    a = random_contraction(rng, 2, 3)
    b = random_contraction(rng, 3, 2)
    assert (a @ b).dagger() == b.dagger() @ a.dagger()
    assert a.tensor(b).dagger() == a.dagger().tensor(b.dagger())
    s = symmetry_tensor(2, 3)
    assert s @ a.tensor(b) == b.tensor(a) @ symmetry_tensor(3, 2)


def test_biproduct_injection_block_form():
    assert i1(2, 1) == Matrix.from_rows([[1, 0], [0, 1], [0, 0]])
    assert p1(2, 1) == i1(2, 1).dagger()


def test_averaging_projector_is_boundary_contraction():
    a = Matrix.from_rows([[half, half], [half, half]])
    assert is_contraction(a)
    assert not is_contraction(a.scale(Fraction(101, 100)))


def test_ldl_witness_is_negative():
    m = Matrix.from_rows([[1, 2], [2, 1]])
    res = ldl_psd(m)
    assert not res.psd
    v = res.negative_vector
    assert (v.dagger() @ m @ v)[0, 0].re < 0


def test_ldl_certificate_verifies(rng):
    a = random_contraction(rng, 3, 3)
    cert = ConMorphism.certify(a)
    assert cert.verify()


def test_kernel_of_difference():
    k = dagger_kernel(Matrix.row([1, -1]))
    assert k.cols == 1
    assert abs(abs(k[0, 0]) - mpmath.sqrt(2) / 2) < mpmath.mpf(2) ** -40


def test_equaliser_shape_check():
    with pytest.raises(DimensionMismatch):
        dagger_equaliser(Matrix.identity(2), Matrix.identity(3))


def test_factorisation_of_column():
    fac = epi_dagger_mono_factorise(Matrix.column([1, 1]))
    assert fac.inner_dim == 1
    assert abs(abs(fac.e[0, 0]) - mpmath.sqrt(2)) < mpmath.mpf(2) ** -38


def test_sqrt_of_psd():
    p = Matrix.from_rows([[2, 1], [1, 2]])
    r = matrix_sqrt_psd(p)
    assert (r @ r).close_to(ApproxMatrix.from_exact(p), 35)
    with pytest.raises(NotPSD):
        matrix_sqrt_psd(Matrix.from_rows([[1, 2], [2, 1]]))


def test_dilation_of_half():
    d = halmos_dilation(Matrix.scalar(half))
    expected = [0.5, 0.8660254037844386, 0.8660254037844386, -0.5]
    assert all(abs(d.u.entries[k] - expected[k]) < 1e-12 for k in range(4))
    assert d.u.is_unitary(35)


def test_dagger_finite(rng):
    for _ in range(20):
        assert dagger_finite_check(random_unitary(rng, 3))
    with pytest.raises(NotSquare):
        dagger_finite_check(Matrix.column([1, 0]))


def test_orthonormal_completion_up_to_sign():
    u = orthonormal_decompose([Matrix.column([Fraction(3, 5), Fraction(4, 5)])], 2)
    second = [u[1, 0], u[1, 1]]
    target = [-0.8, 0.6]
    sign = 1 if abs(second[0] - target[0]) < 1e-9 else -1
    assert all(abs(sign * second[k] - target[k]) < 1e-12 for k in range(2))
    with pytest.raises(NotOrthonormalSystem):
        orthonormal_decompose([Matrix.column([1, 1])], 2)


def test_positivity_witness(rng):
    x = Matrix.from_rows([[1, 0, half], [0, half, 0]]).scale(half)
    u = random_unitary(rng, 2)
    w = positivity_witness(x, u @ x)
    assert w == u
    assert positivity_witness(x, x.scale(2)) is None
    with pytest.raises(NotEpi):
        positivity_witness(Matrix.column([1, 0]), Matrix.column([0, 1]))


def test_cokernel_kills_mono():
    m = Matrix.column([Fraction(3, 5), Gauss(0, Fraction(4, 5))])
    c = dagger_cokernel_exact(m)
    assert (c @ m).is_zero() and rank(c) == 1
    assert is_dagger_mono(m)


def test_power_iteration_finds_norm():
    sigma, _, _ = power_iteration(Matrix.diag([2, 1]))
    assert abs(sigma - 2) < 1e-9
