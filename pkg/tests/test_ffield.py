# tests/test_ffield.py
from fractions import Fraction

import numpy as np
import pytest

from src.ffield import (FieldSpec, field_embed, field_make, field_sqrt, frobenius, is_irreducible,
                        mat_cokernel, mat_image, mat_kernel, mat_power, mat_rank, mat_solve,
                        solve_exact, teichmuller)
from src.utils import InconsistentSystemError, InvalidParameterError


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_prime_field(p):
    spec = field_make(p)
    assert spec.modulus == (0, 1)
    assert spec.order == p
    assert spec(p + 1) == spec(1)
    assert spec.to_json(spec(-1)) == p - 1


@pytest.mark.parametrize("p, k", [(2, 2), (3, 2), (5, 2), (2, 3)])
def test_extension_field(p, k):
    spec = field_make(p, k)
    assert spec.order == p ** k
    assert is_irreducible(p, spec.modulus)
    x = spec.element([0, 1])
    # x is a root of the modulus
    value = spec.GF(0)
    for c in reversed(spec.modulus):
        value = value * x + spec(c)
    assert value == 0
    assert spec.coeffs(spec.element([1, 2 % p])) == [1, 2 % p] + [0] * (k - 2)
    assert spec.from_json(spec.to_json(x)) == x


def test_field_make_rejects():
    with pytest.raises(InvalidParameterError):
        field_make(4)
    with pytest.raises(InvalidParameterError):
        field_make(3, 0)
    with pytest.raises(InvalidParameterError):
        FieldSpec(3, 2, (0, 0, 1))
    with pytest.raises(InvalidParameterError):
        FieldSpec(3, 2, (2, 0, 1))  # x^2 - 1


def test_teichmuller_and_frobenius():
    spec = field_make(5)
    assert teichmuller(spec, 7) == spec(2)
    assert teichmuller(spec, Fraction(3, 2)) == spec(4)
    with pytest.raises(InvalidParameterError):
        teichmuller(spec, 10)
    large = field_make(3, 2)
    for x in large.GF.elements:
        assert frobenius(frobenius(x)) == x


def test_field_sqrt():
    spec = field_make(5)
    assert field_sqrt(spec, 4) ** 2 == spec(4)
    assert field_sqrt(spec, 2) is None
    large = field_make(5, 2)
    root = field_sqrt(large, 2)
    assert root is not None and root ** 2 == large(2)


def test_field_embed_is_a_ring_map():
    small, large = field_make(3, 2), field_make(3, 4)
    embed = field_embed(small, large)
    elements = small.GF.elements
    for x in elements[:5]:
        for y in elements[4:]:
            assert embed(x * y) == embed(x) * embed(y)
            assert embed(x + y) == embed(x) + embed(y)
    with pytest.raises(InvalidParameterError):
        field_embed(field_make(3, 2), field_make(3, 3))


def test_kernel_image_rank():
    GF = field_make(5).GF
    M = GF([[1, 2, 3], [2, 4, 0]])
    K = mat_kernel(M)
    assert K.shape == (3, 1)
    assert np.count_nonzero(M @ K) == 0
    assert mat_rank(M) == 2
    assert mat_image(M).shape == (2, 2)
    assert mat_rank(GF.Zeros((2, 2))) == 0
    assert mat_kernel(GF.Zeros((2, 3))).shape == (3, 3)


def test_cokernel_projection_and_section():
    GF = field_make(3).GF
    M = GF([[1], [1], [0]])
    coker = mat_cokernel(M)
    assert coker.dim == 2
    assert np.count_nonzero(coker.projection @ M) == 0
    assert np.array_equal(coker.projection @ coker.section, GF.Identity(2))


def test_solve():
    GF = field_make(7).GF
    M = GF([[1, 1], [0, 2]])
    b = GF([3, 4])
    x = solve_exact(M, b)
    assert np.array_equal(M @ x, b)
    singular = GF([[1, 1], [1, 1]])
    assert mat_solve(singular, GF([1, 2])) is None
    with pytest.raises(InconsistentSystemError):
        solve_exact(singular, GF([1, 2]))
    with pytest.raises(InvalidParameterError):
        mat_solve(M, GF([1, 2, 3]))


def test_mat_power():
    GF = field_make(3).GF
    gamma = GF([[1, 1], [0, 1]])
    assert np.array_equal(mat_power(gamma, 3), GF.Identity(2))
    assert np.array_equal(mat_power(gamma, -1) @ gamma, GF.Identity(2))
    assert np.array_equal(mat_power(gamma, 0), GF.Identity(2))
