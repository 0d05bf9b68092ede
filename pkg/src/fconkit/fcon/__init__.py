"""Skeletal matrix model of finite-dimensional Hilbert spaces and contractions over Q(i)."""

from .approx import ApproxMatrix
from .matrix import (Matrix, block, column_space, compose, dagger, dsum, hstack, i1, i2, injection,
                     inverse, nullspace, p1, p2, projection, rank, rref, solve, tensor, vstack)
from .ops import (ConMorphism, Dilation, Factorisation, contraction_test, dagger_equaliser,
                  dagger_finite_check, dagger_kernel, epi_dagger_mono_factorise, halmos_dilation,
                  is_contraction, is_dagger_epi, is_dagger_mono, is_epi, is_mono, is_unitary,
                  matrix_sqrt_psd, orthonormal_decompose, positivity_witness)
from .psd import LDLCertificate, is_psd, ldl_psd

__all__ = [
    "ApproxMatrix", "Matrix", "ConMorphism", "Dilation", "Factorisation", "LDLCertificate",
    "block", "column_space", "compose", "dagger", "dsum", "hstack", "i1", "i2", "injection",
    "inverse", "nullspace", "p1", "p2", "projection", "rank", "rref", "solve", "tensor", "vstack",
    "contraction_test", "dagger_equaliser", "dagger_finite_check", "dagger_kernel",
    "epi_dagger_mono_factorise", "halmos_dilation", "is_contraction", "is_dagger_epi",
    "is_dagger_mono", "is_epi", "is_mono", "is_unitary", "matrix_sqrt_psd",
    "orthonormal_decompose", "positivity_witness", "is_psd", "ldl_psd",
]
