# tests/test_torus.py
import random
from fractions import Fraction

import numpy as np
import pytest

from src.ffield import field_make, mat_rank, solve_columns
from src.padic import GMatrix
from src.torus import (ZERO, HeckeLaurent, PadicCharacter, TorusCharacter, TorusUnits,
                       cokernel_dimension, eventual_image, ind_cokernel, localization_map,
                       localize_finite, localized_map)
from src.utils import InvalidParameterError, NotACharacterError


@pytest.fixture
def gf5():
    return field_make(5)


def test_character_values(gf5):
    chi = PadicCharacter(gf5, 2, 1)
    assert chi(5) == gf5(2)
    assert chi(3) == gf5(3)
    assert chi(Fraction(3, 25)) == gf5(3) * gf5(2) ** -2
    assert (chi * chi.inverse()) == PadicCharacter.trivial(gf5)
    assert PadicCharacter.omega(gf5, 5) == PadicCharacter.omega(gf5)
    with pytest.raises(InvalidParameterError):
        PadicCharacter(gf5, 0, 0)
    with pytest.raises(InvalidParameterError):
        chi(0)


def test_character_labels_and_json(gf5):
    assert PadicCharacter.trivial(gf5).label() == "1"
    assert PadicCharacter.omega(gf5).label() == "ω"
    assert PadicCharacter(gf5, 3, 2).label() == "μ_3 ω^2"
    assert PadicCharacter(gf5, 3, 2).to_json() == {"lambda": 3, "e": 2}
    assert ZERO.to_json() == 0
    assert ZERO.twist(PadicCharacter.omega(gf5)) is ZERO


def test_torus_character(gf5):
    omega = PadicCharacter.omega(gf5)
    delta = TorusCharacter(omega, omega.inverse())
    assert delta(GMatrix.diag(5, 2, 1)) == gf5(2)
    assert delta(GMatrix.diag(5, 1, 2)) == gf5(3)
    assert delta(GMatrix.diag(5, 5, 5)) == gf5(1)
    assert delta.units == TorusUnits(5, 1, 3)
    assert delta.twist(omega).label() == "ω^2 ⊠ 1"
    with pytest.raises(InvalidParameterError):
        delta(GMatrix.unipotent(5, 1))


def test_laurent_arithmetic(gf5):
    X = HeckeLaurent.monomial(gf5, 1)
    one = HeckeLaurent.constant(gf5, 1)
    assert (X + one) * (X - one) == X ** 2 - one
    assert X ** -1 == HeckeLaurent.monomial(gf5, -1)
    assert (X ** 3).to_json() == {"X^3": 1}
    assert HeckeLaurent.from_json(gf5, {"X^-1": 4, "X^0": 2}) == HeckeLaurent(gf5, {-1: 4, 0: 2})
    assert (X - X).is_zero()
    assert X.scale(5).is_zero()
    assert X.minus_scalar(2).exponents() == [0, 1]
    with pytest.raises(InvalidParameterError):
        (X + one) ** -1


def test_ind_cokernel_degree_zero(gf5):
    # X - 2 on ind(1 ⊠ omega) with central omega
    units = TorusUnits(5, 0, 1)
    result = ind_cokernel(HeckeLaurent.monomial(gf5, 1), 2, units, PadicCharacter(gf5, 1, 1))
    assert result == TorusCharacter(PadicCharacter(gf5, 3, 0), PadicCharacter(gf5, 2, 1))


def test_ind_cokernel_degree_one(gf5):
    units = TorusUnits(5, 2, -1)
    result = ind_cokernel(HeckeLaurent.monomial(gf5, -1), 2, units, PadicCharacter(gf5, 1, 1))
    assert result == TorusCharacter(PadicCharacter(gf5, 2, 2), PadicCharacter(gf5, 3, 3))


def test_ind_cokernel_degenerate(gf5):
    units = TorusUnits(5, 0, 0)
    central = PadicCharacter.trivial(gf5)
    X = HeckeLaurent.monomial(gf5, 1)
    assert ind_cokernel(X, 0, units, central) is ZERO
    with pytest.raises(NotACharacterError):
        ind_cokernel(X ** 2, 1, units, central)
    with pytest.raises(NotACharacterError):
        ind_cokernel(HeckeLaurent.constant(gf5, 3), 3, units, central)
    with pytest.raises(InvalidParameterError):
        ind_cokernel(X, 1, units, PadicCharacter.omega(gf5))


def test_cokernel_dimension(gf5):
    X = HeckeLaurent.monomial(gf5, 1)
    assert cokernel_dimension(X ** 2 - X ** -1) == 3
    assert cokernel_dimension(X) == 0
    with pytest.raises(NotACharacterError):
        cokernel_dimension(X - X)


def test_localisation(gf5):
    GF = gf5.GF
    # invertible on e1, nilpotent on e2, e3
    z = GF([[2, 0, 0], [0, 0, 1], [0, 0, 0]])
    assert localize_finite(z) == 1
    assert eventual_image(z).shape == (3, 1)
    loc = localization_map(z)
    assert loc.shape == (1, 3)
    assert np.array_equal(eventual_image(z) @ (loc @ GF([1, 0, 0])), GF([1, 0, 0]))
    assert np.count_nonzero(loc @ GF([0, 1, 0])) == 0
    assert localize_finite(GF([[0, 1], [0, 0]])) == 0
    assert localization_map(GF([[0, 1], [0, 0]])).shape == (0, 2)
    f = GF([[3, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert np.array_equal(localized_map(f, z, z), GF([[3]]))


def _substitute(op: HeckeLaurent, c) -> HeckeLaurent:
    """op(cX)."""
    c = op.field(c)
    return HeckeLaurent(op.field, {n: op.coefficient(n) * c ** n for n in op.exponents()})


@pytest.mark.parametrize("p", [3, 5, 7])
def test_ind_cokernel_commutes_with_unramified_twist(p):
    field = field_make(p)
    X = HeckeLaurent.monomial(field, 1)
    one = HeckeLaurent.constant(field, 1)
    ops = [X, X ** -1, X.scale(2) + one, X ** -1 + one.scale(3)]
    for e1, e2 in [(0, 0), (1, p - 2), (2, 1)]:
        units = TorusUnits(p, e1, e2)
        central = PadicCharacter(field, 1 + (e1 % (p - 1)), units.central_exponent)
        for op in ops:
            for lam in range(1, p):
                if op.minus_scalar(lam).is_zero():
                    continue
                untwisted = ind_cokernel(op, lam, units, central)
                for c in range(1, p):
                    mu_c = PadicCharacter(field, c, 0)
                    twisted = ind_cokernel(_substitute(op, c), lam, units, central * mu_c * mu_c)
                    assert twisted == untwisted.twist(mu_c)


def _random_matrix(field, rng, rows, cols, rank_drop=False):
    p = field.p
    M = field.GF([[rng.randrange(p) for _ in range(cols)] for _ in range(rows)])
    if rank_drop and cols:
        M[:, rng.randrange(cols)] = 0
    return M


def _random_invertible(field, rng, n):
    while True:
        P = _random_matrix(field, rng, n, n)
        if mat_rank(P) == n:
            return P


def _block_diag(field, A, B):
    n, m = A.shape[0], B.shape[0]
    Z = field.GF.Zeros((n + m, n + m))
    Z[:n, :n] = A
    Z[n:, n:] = B
    return Z


@pytest.mark.parametrize("p", [2, 3, 5])
def test_localisation_is_exact_on_split_sequences(p):
    field = field_make(p)
    rng = random.Random(p)
    for _ in range(10):
        n, m = rng.randint(1, 3), rng.randint(1, 3)
        A = _random_matrix(field, rng, n, n, rank_drop=rng.random() < 0.5)
        B = _random_matrix(field, rng, m, m, rank_drop=rng.random() < 0.5)
        P = _random_invertible(field, rng, n + m)
        P_inv = np.linalg.inv(P)
        z = P @ _block_diag(field, A, B) @ P_inv
        first = field.GF.Zeros((n + m, n))
        first[:n, :] = field.GF.Identity(n)
        last = field.GF.Zeros((m, n + m))
        last[:, n:] = field.GF.Identity(m)
        inclusion = P @ first
        projection = last @ P_inv
        assert np.array_equal(z @ inclusion, inclusion @ A)
        assert np.array_equal(projection @ z, B @ projection)

        assert localize_finite(z) == localize_finite(A) + localize_finite(B)
        injected = localized_map(inclusion, A, z)
        projected = localized_map(projection, z, B)
        assert injected.shape == (localize_finite(z), localize_finite(A))
        assert projected.shape == (localize_finite(B), localize_finite(z))
        if localize_finite(A):
            assert mat_rank(injected) == localize_finite(A)
        if localize_finite(B):
            assert mat_rank(projected) == localize_finite(B)
        if localize_finite(A) and localize_finite(B):
            assert np.count_nonzero(projected @ injected) == 0


@pytest.mark.parametrize("p", [2, 3, 5])
def test_localization_map_is_surjective_and_equivariant(p):
    field = field_make(p)
    rng = random.Random(10 + p)
    for _ in range(15):
        n = rng.randint(1, 4)
        z = _random_matrix(field, rng, n, n, rank_drop=rng.random() < 0.5)
        loc = localization_map(z)
        image = eventual_image(z)
        assert loc.shape == (localize_finite(z), n)
        if not image.shape[1]:
            continue
        assert mat_rank(loc) == image.shape[1]
        restricted = solve_columns(image, z @ image)
        assert np.array_equal(loc @ z, restricted @ loc)
        assert np.array_equal(loc @ image, field.GF.Identity(image.shape[1]))
