# tests/test_jacquet.py
import logging

import pytest

from src.ffield import field_make
from src.jacquet import (IrreducibleLabel, JacquetResult, character_case, jacquet_of_presentation,
                         principal_series, special_series_via_les, table1, table1_rows,
                         validate_presentation)
from src.torus import ZERO, PadicCharacter, TorusCharacter
from src.utils import InvalidParameterError


def presentation_expected(spec, r, lam, chi):
    mu = PadicCharacter.make(spec, lam)
    omega = PadicCharacter.omega(spec)
    L0 = TorusCharacter(mu.inverse(), mu * PadicCharacter.omega(spec, r))
    L1 = TorusCharacter(mu * PadicCharacter.omega(spec, r + 1), mu.inverse() * omega.inverse())
    return JacquetResult(L0, L1).twist(chi)


@pytest.mark.parametrize("p", [3, 5])
def test_presentations(p):
    spec = field_make(p)
    chi = PadicCharacter(spec, 2 % p or 1, 1)
    for r in range(p):
        for lam in range(1, p):
            if r in (0, p - 1) and lam in (1, p - 1):
                continue
            assert jacquet_of_presentation(r, lam, chi) == presentation_expected(spec, r, lam, chi)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_supersingular_vanishes(p):
    spec = field_make(p)
    for r in range(p):
        for chi in (PadicCharacter.trivial(spec), PadicCharacter.omega(spec)):
            result = jacquet_of_presentation(r, 0, chi)
            assert result.L0 is ZERO and result.L1 is ZERO


def test_presentation_over_quadratic_extension():
    spec = field_make(3, 2)
    lam = spec.element([1, 1])
    chi = PadicCharacter.trivial(spec)
    assert jacquet_of_presentation(1, lam, chi) == presentation_expected(spec, 1, lam, chi)


def test_validate_presentation():
    spec = field_make(5)
    validate_presentation(2, 1, spec)
    for r, lam in [(0, 1), (0, 4), (4, 1), (4, 4)]:
        with pytest.raises(InvalidParameterError):
            validate_presentation(r, lam, spec)
    with pytest.raises(InvalidParameterError):
        validate_presentation(5, 2, spec)


@pytest.mark.parametrize("p", [3, 5])
def test_character_and_special_rows(p):
    spec = field_make(p)
    omega = PadicCharacter.omega(spec)
    for chi in (PadicCharacter.trivial(spec), omega, PadicCharacter(spec, p - 1, 1)):
        assert character_case(chi) == JacquetResult(TorusCharacter(chi, chi), ZERO)
        assert special_series_via_les(chi) == JacquetResult(ZERO, TorusCharacter(chi * omega, chi * omega.inverse()))


def test_principal_series():
    spec = field_make(5)
    omega = PadicCharacter.omega(spec)
    chi1, chi2 = PadicCharacter(spec, 2, 0), PadicCharacter(spec, 3, 3)
    assert principal_series(chi1, chi2) == JacquetResult(
        TorusCharacter(chi1, chi2), TorusCharacter(chi2 * omega, chi1 * omega.inverse()))


def test_principal_series_extends_the_field(caplog):
    spec = field_make(5)
    # 1 * 2 is not a square mod 5
    chi1, chi2 = PadicCharacter.trivial(spec), PadicCharacter(spec, 2, 1)
    with caplog.at_level(logging.WARNING):
        result = principal_series(chi1, chi2)
    assert "extending" in caplog.text
    assert result.L0.chi1.field == field_make(5, 2)
    assert result.L0.chi1.lam == 1 and result.L0.chi2.e == 1


def test_labels():
    spec = field_make(3)
    trivial, omega = PadicCharacter.trivial(spec), PadicCharacter.omega(spec)
    assert IrreducibleLabel.character(trivial).label() == "1 ∘ det"
    assert IrreducibleLabel.special(omega).label() == "Sp ⊗ ω ∘ det"
    assert IrreducibleLabel.principal(trivial, omega).label() == "i_T^G(1 ⊠ ω)"
    assert IrreducibleLabel.supersingular(1, trivial).label() == "V(1, 0, 1)"
    with pytest.raises(InvalidParameterError):
        IrreducibleLabel.principal(omega, omega)
    with pytest.raises(InvalidParameterError):
        IrreducibleLabel.supersingular(3, trivial)


def test_table_rows_for_three():
    spec = field_make(3)
    rows = {label.kind.value: result.to_json() for label, result in table1_rows(spec)}
    one = {"lambda": 1, "e": 0}
    omega = {"lambda": 1, "e": 1}
    assert rows["character"] == {"L-1": 0, "L0": {"chi1": one, "chi2": one}}
    assert rows["special"] == {"L-1": {"chi1": omega, "chi2": omega}, "L0": 0}
    assert rows["principal"] == {"L-1": {"chi1": one, "chi2": omega}, "L0": {"chi1": one, "chi2": omega}}
    assert rows["supersingular"] == {"L-1": 0, "L0": 0}


def test_table_rows_need_two_characters():
    with pytest.raises(InvalidParameterError):
        table1_rows(field_make(2))
    rows = table1_rows(field_make(2, 2))
    assert len(rows) == 4


def test_result_components():
    spec = field_make(3)
    result = table1(IrreducibleLabel.special(PadicCharacter.trivial(spec)))
    assert result.component(0) is ZERO
    assert result.component(1) == result.L1
    assert result.component(2) is ZERO
