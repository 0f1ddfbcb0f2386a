# src/utils.py
import re


class ModpSatakeError(Exception):
    """Base class for every error raised by the library."""
    pass


class InvalidParameterError(ModpSatakeError, ValueError):
    """Custom exception for malformed or out-of-range inputs."""
    pass


class InconsistentSystemError(ModpSatakeError):
    """A linear system has no solution."""
    pass


class TruncationError(ModpSatakeError):
    """A coset sum picked up a nonzero term beyond its truncation."""
    pass


class OracleRangeError(ModpSatakeError):
    """No finite quotient small enough for the brute-force oracle."""
    pass


class NotACharacterError(ModpSatakeError):
    """A Hecke cokernel is not one-dimensional."""
    pass


class SequenceBookkeepingError(ModpSatakeError):
    """A long exact sequence cannot be resolved from the known terms."""
    pass


class GoldenMismatchError(ModpSatakeError):
    """A computed report differs from the stored golden file."""
    pass


_INT = r'-?\d+'
_COEFFS = r'\[\s*(?:-?\d+\s*(?:,\s*-?\d+\s*)*)?\]'


def parse_coefficients(text: str) -> list[int]:
    """
    Parse a field element given as `7` or as a coefficient list `[c0,c1,...]`.
    """
    text = text.strip()
    if re.fullmatch(_INT, text):
        return [int(text)]
    if re.fullmatch(_COEFFS, text):
        body = text[1:-1].strip()
        return [int(c) for c in body.split(',')] if body else [0]
    raise InvalidParameterError(f"Invalid field element format: {text}")


def parse_character(text: str) -> tuple[list[int], int]:
    """Parse `lambda,e` (lambda an integer or a coefficient list)."""
    match = re.fullmatch(rf'\s*({_INT}|{_COEFFS})\s*,\s*({_INT})\s*', text)
    if not match:
        raise InvalidParameterError(f"Invalid character format (expected lambda,e): {text}")
    return parse_coefficients(match.group(1)), int(match.group(2))


def parse_weight(text: str) -> tuple[int, int]:
    """Parse `r,e`."""
    match = re.fullmatch(rf'\s*({_INT})\s*,\s*({_INT})\s*', text)
    if not match:
        raise InvalidParameterError(f"Invalid weight format (expected r,e): {text}")
    return int(match.group(1)), int(match.group(2))


def parse_hecke_polynomial(text: str) -> dict[int, int]:
    """
    Parse `phi^n` or a polynomial such as `2+phi+3*phi^2` (also `phi-1`).
    Returns {degree: integer coefficient}.
    """
    compact = re.sub(r'\s+', '', text.lower())
    if not compact:
        raise InvalidParameterError("Empty Hecke polynomial")
    compact = re.sub(r'(?<=[\w)])-', '+-', compact)
    coefficients: dict[int, int] = {}
    for term in compact.split('+'):
        constant = re.fullmatch(_INT, term)
        monomial = re.fullmatch(r'(-)?(?:(\d+)\*?)?phi(?:\^(\d+))?', term)
        if constant:
            degree, coeff = 0, int(term)
        elif monomial:
            sign, number, power = monomial.groups()
            degree = int(power) if power else 1
            coeff = int(number) if number else 1
            if sign:
                coeff = -coeff
        else:
            raise InvalidParameterError(f"Invalid Hecke polynomial term '{term}' in {text}")
        coefficients[degree] = coefficients.get(degree, 0) + coeff
    return coefficients
