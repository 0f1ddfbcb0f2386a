# tests/test_utils.py
import pytest

from src.utils import (InvalidParameterError, ModpSatakeError, parse_character, parse_coefficients,
                       parse_hecke_polynomial, parse_weight)


def test_parse_coefficients_integer_and_list():
    assert parse_coefficients("7") == [7]
    assert parse_coefficients(" -2 ") == [-2]
    assert parse_coefficients("[1, 0, 2]") == [1, 0, 2]
    assert parse_coefficients("[]") == [0]


@pytest.mark.parametrize("text", ["", "x", "[1,,2]", "1,2", "1.5"])
def test_parse_coefficients_rejects(text):
    with pytest.raises(InvalidParameterError):
        parse_coefficients(text)


def test_parse_character():
    assert parse_character("2,1") == ([2], 1)
    assert parse_character("[1,1], -1") == ([1, 1], -1)
    with pytest.raises(InvalidParameterError):
        parse_character("2")


def test_parse_weight():
    assert parse_weight("3,0") == (3, 0)
    assert parse_weight(" 1 , 2 ") == (1, 2)
    with pytest.raises(InvalidParameterError):
        parse_weight("3")


@pytest.mark.parametrize("text, expected", [
    ("phi", {1: 1}),
    ("phi^3", {3: 1}),
    ("2+phi+3*phi^2", {0: 2, 1: 1, 2: 3}),
    ("phi-1", {1: 1, 0: -1}),
    ("-phi", {1: -1}),
    ("4", {0: 4}),
    ("phi + phi", {1: 2}),
])
def test_parse_hecke_polynomial(text, expected):
    assert parse_hecke_polynomial(text) == expected


@pytest.mark.parametrize("text", ["", "psi", "phi^", "2**phi"])
def test_parse_hecke_polynomial_rejects(text):
    with pytest.raises(InvalidParameterError):
        parse_hecke_polynomial(text)


def test_invalid_parameter_is_a_value_error():
    error = InvalidParameterError("bad")
    assert isinstance(error, ValueError)
    assert isinstance(error, ModpSatakeError)
