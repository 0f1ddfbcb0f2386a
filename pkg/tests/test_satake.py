# tests/test_satake.py
import random
from fractions import Fraction

import numpy as np
import pytest

from src.cohomology import h0
from src.ffield import field_make
from src.gl2ind import hecke_poly, phi_power
from src.padic import GMatrix
from src.satake import (BorelIndElement, act_b, double_coset_partition, h0_coordinates, hecke_b,
                        mu, mu_domain, mu_projection, orbit_sum, positive_translate, satake,
                        satake0, satake1, satake_units, unipotent_level, unwind)
from src.torus import HeckeLaurent, TorusUnits
from src.utils import InvalidParameterError, TruncationError
from src.weights import Weight, action_matrix, weight_module


@pytest.mark.parametrize("p", [2, 3, 5])
def test_satake_of_phi(p):
    spec = field_make(p)
    X = HeckeLaurent.monomial(spec, 1)
    for r in range(p):
        weight = Weight(r, 0, spec)
        phi = phi_power(weight, 1)
        assert satake0(phi, weight) == X
        assert satake1(phi, weight) == X ** -1


@pytest.mark.parametrize("p", [2, 3])
def test_satake_is_multiplicative(p):
    spec = field_make(p)
    for r in range(p):
        weight = Weight(r, 0, spec)
        for degree in (0, 1):
            base = satake(phi_power(weight, 1), weight, degree)
            assert satake(phi_power(weight, 2), weight, degree) == base ** 2


def test_satake_of_polynomials():
    weight = Weight(1, 0, field_make(3))
    q1 = hecke_poly(weight, {0: 1, 1: 2})
    q2 = hecke_poly(weight, {0: 2, 2: 1})
    for degree in (0, 1):
        assert satake(q1 * q2, weight, degree) == satake(q1, weight, degree) * satake(q2, weight, degree)
    assert satake(hecke_poly(weight, {0: 2}), weight, 0) == HeckeLaurent.constant(weight.field, 2)


def test_deeper_truncation_agrees():
    weight = Weight(2, 0, field_make(3))
    phi = phi_power(weight, 1)
    for degree in (0, 1):
        assert satake(phi, weight, degree, 2) == satake(phi, weight, degree)


def test_truncation_too_shallow():
    weight = Weight(1, 0, field_make(3))
    with pytest.raises(TruncationError):
        satake(phi_power(weight, 1), weight, 0, 0)


def test_satake_rejects_degree_two():
    weight = Weight(1, 0, field_make(3))
    with pytest.raises(InvalidParameterError):
        satake(phi_power(weight, 1), weight, 2)


@pytest.mark.parametrize("p", [3, 5])
def test_satake_units(p):
    spec = field_make(p)
    for r in range(p):
        weight = Weight(r, 0, spec)
        assert satake_units(weight, 0) == TorusUnits(p, 0, r)
        assert satake_units(weight, 1) == TorusUnits(p, r + 1, -1)


def test_unipotent_level():
    p = 3
    assert unipotent_level(GMatrix.diag(p, 1, 9)) == 2
    assert unipotent_level(GMatrix.diag(p, 9, 1)) == 0
    assert unipotent_level(positive_translate(GMatrix.diag(p, 1, 9)) @ GMatrix.diag(p, 1, 9)) == 0
    with pytest.raises(InvalidParameterError):
        unipotent_level(GMatrix(p, 1, 0, 1, 1))


def test_mu_projection_rules():
    p = 3
    weight = Weight(2, 0, field_make(p))
    identity = weight.field.GF.Identity(weight.dim)
    g = GMatrix.diag(p, 1, 9)
    D = mu_domain(g, weight)
    m1, m2 = GMatrix.diag(p, 3, 1), GMatrix.diag(p, 9, 3)
    assert np.array_equal(mu_projection(GMatrix.identity(p), g, weight) @ D, D)
    assert np.array_equal(mu_projection(m1, GMatrix.diag(p, 9, 1), weight), identity)
    composite = mu_projection(m1 @ m2, g, weight) @ D
    assert np.array_equal(composite, mu_projection(m1, m2 @ g, weight) @ mu_projection(m2, g, weight) @ D)
    assert np.array_equal(mu(g, weight) @ D, mu(g, weight, GMatrix.diag(p, 27, 1) @ positive_translate(g)) @ D)
    # mu_g lands in the K_U-invariants
    image = mu(g, weight) @ D
    assert np.count_nonzero((action_matrix(weight, GMatrix.unipotent(p, 1)) - identity) @ image) == 0
    with pytest.raises(InvalidParameterError):
        mu_projection(GMatrix.diag(p, 1, 3), g, weight)
    with pytest.raises(InvalidParameterError):
        mu(g, weight, GMatrix.identity(p))


def test_borel_elements():
    p = 3
    weight = Weight(1, 0, field_make(p))
    w = weight.vector([1, 2])
    x = BorelIndElement.from_term(weight, GMatrix(p, 3, 1, 0, 1), w)
    assert act_b(GMatrix.identity(p), x) == x
    g, h = GMatrix(p, 9, 2, 0, 3), GMatrix(p, 2, Fraction(1, 3), 0, 1)
    assert act_b(g, act_b(h, x)) == act_b(g @ h, x)
    # K_U-orbit sums are K_U-invariant
    y = orbit_sum(GMatrix.diag(p, 9, 1), weight.x_power(), weight)
    assert act_b(GMatrix.unipotent(p, 1), y) == y
    assert len(y.terms) == 9


def test_double_coset_partition():
    assert all(count == 1 for count in double_coset_partition(3, 2).values())
    assert len(double_coset_partition(2, 1)) == 6


def test_hecke_formula_and_unwinding():
    p = 3
    weight = Weight(1, 0, field_make(p))
    w0 = h0(weight_module(weight))[:, 0]
    positives = [GMatrix.diag(p, 3, 1), GMatrix.scalar(p, 3), GMatrix.diag(p, 2, 1)]
    for a in range(-1, 2):
        for b in range(-1, 2):
            g = GMatrix.diag(p, Fraction(p) ** a, Fraction(p) ** b)
            D = mu_domain(g, weight)
            for j in range(D.shape[1]):
                x = orbit_sum(g, D[:, j], weight)
                for m in positives:
                    lhs = hecke_b(m, x)
                    assert lhs == orbit_sum(m @ g, mu_projection(m, g, weight) @ D[:, j], weight)
                    assert unwind(lhs) == unwind(x).translate(m)
    for a in range(-1, 2):
        for b in range(-1, a + 1):
            x = orbit_sum(GMatrix.diag(p, Fraction(p) ** a, Fraction(p) ** b), w0, weight)
            coordinates = h0_coordinates(unwind(x))
            assert list(coordinates) == [(a, b)]
            assert coordinates[(a, b)] != 0


def test_unwind_requires_invariance():
    p = 3
    weight = Weight(1, 0, field_make(p))
    x = BorelIndElement.from_term(weight, GMatrix.diag(p, 1, 3), weight.vector([0, 1]))
    with pytest.raises(InvalidParameterError):
        unwind(x)


def _substitute(op: HeckeLaurent, c) -> HeckeLaurent:
    """op(cX)."""
    c = op.field(c)
    return HeckeLaurent(op.field, {n: op.coefficient(n) * c ** n for n in op.exponents()})


@pytest.mark.parametrize("p, r", [(3, 0), (3, 1), (3, 2), (5, 2)])
def test_satake_commutes_with_unramified_twist(p, r):
    # twisting by mu_c o det rescales Phi by c; on the torus side X picks up c in degree 0, c^-1 in degree 1
    weight = Weight(r, 0, field_make(p))
    rng = random.Random(7 * p + r)
    coefficients = {n: rng.randrange(p) for n in range(3)}
    coefficients[2] = rng.randrange(1, p)
    q = hecke_poly(weight, coefficients)
    s0, s1 = satake0(q, weight), satake1(q, weight)
    for c in range(1, p):
        twisted = hecke_poly(weight, {n: a * c ** n for n, a in coefficients.items()})
        assert satake0(twisted, weight) == _substitute(s0, c)
        assert satake1(twisted, weight) == _substitute(s1, pow(c, -1, p))


@pytest.mark.parametrize("p", [3, 5])
def test_satake_commutes_with_determinant_twist(p):
    spec = field_make(p)
    phi_sq = {1: 1, 2: 1}
    for r in range(p):
        base = Weight(r, 0, spec)
        expected = {degree: satake(hecke_poly(base, phi_sq), base, degree) for degree in (0, 1)}
        for e in range(1, p - 1):
            twisted = Weight(r, e, spec)
            for degree in (0, 1):
                assert satake(hecke_poly(twisted, phi_sq), twisted, degree) == expected[degree]
                assert satake_units(twisted, degree) == satake_units(base, degree) * TorusUnits(p, e, e)
