"""
Smooth characters of Q_p^x and of the diagonal torus, rank-one Hecke modules
ind_{ZK_T}^T(unit character) over k[X^{+-1}], and the localisation
ind_{C+}^C of finite-dimensional modules under a positive element z.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Union

import galois
import numpy as np

from src.ffield import FieldSpec, mat_image, mat_power, mat_rank, solve_columns, teichmuller
from src.padic import GMatrix, Scalar, unit_part, valuation
from src.utils import InvalidParameterError, NotACharacterError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ZeroRepresentation:
    """The zero representation, a legitimate entry of a Jacquet table."""

    def to_json(self):
        return 0

    def twist(self, chi) -> "ZeroRepresentation":
        return self

    def label(self) -> str:
        return "0"

    def __repr__(self):
        return "0"


ZERO = ZeroRepresentation()


def _exponent(e: int, p: int) -> int:
    return e % (p - 1)


@dataclass(frozen=True)
class PadicCharacter:
    """mu_lambda * omega^e; `lam` is the galois integer representation of chi(p)."""
    field: FieldSpec
    lam: int
    e: int

    def __post_init__(self):
        if not 0 < int(self.lam) < self.field.order:
            raise InvalidParameterError(f"lambda must be a nonzero element of {self.field.label()}")
        object.__setattr__(self, "lam", int(self.lam))
        object.__setattr__(self, "e", _exponent(int(self.e), self.field.p))

    @classmethod
    def make(cls, field: FieldSpec, lam, e: int = 0) -> "PadicCharacter":
        return cls(field, int(field(lam)), e)

    @classmethod
    def trivial(cls, field: FieldSpec) -> "PadicCharacter":
        return cls(field, 1, 0)

    @classmethod
    def omega(cls, field: FieldSpec, power: int = 1) -> "PadicCharacter":
        return cls(field, 1, power)

    @property
    def value_at_p(self) -> galois.FieldArray:
        return self.field.GF(self.lam)

    def __call__(self, x: Scalar) -> galois.FieldArray:
        return char_eval(self, x)

    def __mul__(self, other: "PadicCharacter") -> "PadicCharacter":
        return char_mul(self, other)

    def inverse(self) -> "PadicCharacter":
        return PadicCharacter(self.field, int(self.value_at_p ** -1), -self.e)

    def embed(self, embedding, field: FieldSpec) -> "PadicCharacter":
        return PadicCharacter(field, int(embedding(self.value_at_p)), self.e)

    def to_json(self) -> dict:
        return {"lambda": self.field.to_json(self.value_at_p), "e": self.e}

    def label(self) -> str:
        parts = []
        if self.lam != 1:
            parts.append(f"μ_{self.field.to_json(self.value_at_p)}")
        if self.e:
            parts.append("ω" if self.e == 1 else f"ω^{self.e}")
        return " ".join(parts) or "1"


def char_mul(chi: PadicCharacter, psi: PadicCharacter) -> PadicCharacter:
    if chi.field != psi.field:
        raise InvalidParameterError("Characters live over different fields")
    return PadicCharacter(chi.field, int(chi.value_at_p * psi.value_at_p), chi.e + psi.e)


def char_eval(chi: PadicCharacter, x: Scalar) -> galois.FieldArray:
    """chi(x) = lambda^val(x) * omega(unit part)^e."""
    x = Fraction(x)
    if x == 0:
        raise InvalidParameterError("Characters are not defined at 0")
    p = chi.field.p
    return chi.value_at_p ** valuation(x, p) * teichmuller(chi.field, unit_part(x, p)) ** chi.e


@dataclass(frozen=True)
class TorusUnits:
    """omega^e1 ⊠ omega^e2: a character of the units K_T, exponents mod p-1."""
    p: int
    e1: int
    e2: int

    def __post_init__(self):
        object.__setattr__(self, "e1", _exponent(self.e1, self.p))
        object.__setattr__(self, "e2", _exponent(self.e2, self.p))

    def __mul__(self, other: "TorusUnits") -> "TorusUnits":
        return TorusUnits(self.p, self.e1 + other.e1, self.e2 + other.e2)

    @property
    def central_exponent(self) -> int:
        return _exponent(self.e1 + self.e2, self.p)

    def to_json(self) -> list:
        return [self.e1, self.e2]


@dataclass(frozen=True)
class TorusCharacter:
    """chi1 ⊠ chi2 : diag(a, d) -> chi1(a) chi2(d)."""
    chi1: PadicCharacter
    chi2: PadicCharacter

    def __call__(self, m: GMatrix) -> galois.FieldArray:
        if not m.is_diagonal():
            raise InvalidParameterError(f"{m} is not diagonal")
        return self.chi1(m.a) * self.chi2(m.d)

    def twist(self, chi: PadicCharacter) -> "TorusCharacter":
        return TorusCharacter(self.chi1 * chi, self.chi2 * chi)

    @property
    def units(self) -> TorusUnits:
        return TorusUnits(self.chi1.field.p, self.chi1.e, self.chi2.e)

    def to_json(self) -> dict:
        return {"chi1": self.chi1.to_json(), "chi2": self.chi2.to_json()}

    def label(self) -> str:
        return f"{self.chi1.label()} ⊠ {self.chi2.label()}"


class HeckeLaurent:
    """
    Laurent polynomial in X over a finite field.  X is translation by
    diag(p, 1)^-1 on ind_{ZK_T}^T of a unit character.
    """

    def __init__(self, field: FieldSpec, coefficients: Mapping[int, object] = ()):
        self.field = field
        self.coefficients: dict[int, int] = {}
        for exponent, value in dict(coefficients).items():
            value = int(field(value))
            if value:
                self.coefficients[int(exponent)] = value

    @classmethod
    def monomial(cls, field: FieldSpec, exponent: int, coeff=1) -> "HeckeLaurent":
        return cls(field, {exponent: coeff})

    @classmethod
    def constant(cls, field: FieldSpec, coeff) -> "HeckeLaurent":
        return cls(field, {0: coeff})

    def coefficient(self, exponent: int) -> galois.FieldArray:
        return self.field.GF(self.coefficients.get(exponent, 0))

    def is_zero(self) -> bool:
        return not self.coefficients

    def exponents(self) -> list[int]:
        return sorted(self.coefficients)

    def _combine(self, other: "HeckeLaurent", sign: int) -> "HeckeLaurent":
        if other.field != self.field:
            raise InvalidParameterError("Hecke operators over different fields")
        result = {n: self.coefficient(n) for n in self.coefficients}
        for n in other.coefficients:
            term = other.coefficient(n)
            current = result.get(n, self.field.GF(0))
            result[n] = current + term if sign > 0 else current - term
        return HeckeLaurent(self.field, result)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return HeckeLaurent(self.field, {n: -self.coefficient(n) for n in self.coefficients})

    def __mul__(self, other: "HeckeLaurent") -> "HeckeLaurent":
        result: dict[int, galois.FieldArray] = {}
        for n in self.coefficients:
            for m in other.coefficients:
                term = self.coefficient(n) * other.coefficient(m)
                result[n + m] = result.get(n + m, self.field.GF(0)) + term
        return HeckeLaurent(self.field, result)

    def __pow__(self, n: int) -> "HeckeLaurent":
        if n < 0:
            if len(self.coefficients) != 1:
                raise InvalidParameterError("Only monomials are invertible in k[X^{+-1}]")
            (exponent, _), = self.coefficients.items()
            return HeckeLaurent.monomial(self.field, -exponent, self.coefficient(exponent) ** -1) ** (-n)
        result = HeckeLaurent.constant(self.field, 1)
        for _ in range(n):
            result = result * self
        return result

    def scale(self, c) -> "HeckeLaurent":
        c = self.field(c)
        return HeckeLaurent(self.field, {n: self.coefficient(n) * c for n in self.coefficients})

    def minus_scalar(self, lam) -> "HeckeLaurent":
        return self - HeckeLaurent.constant(self.field, lam)

    def __eq__(self, other):
        if not isinstance(other, HeckeLaurent):
            return NotImplemented
        return self.field == other.field and self.coefficients == other.coefficients

    def __hash__(self):
        return hash((self.field, tuple(sorted(self.coefficients.items()))))

    def to_json(self) -> dict:
        return {f"X^{n}": self.field.to_json(self.coefficient(n)) for n in self.exponents()}

    @classmethod
    def from_json(cls, field: FieldSpec, data: Mapping) -> "HeckeLaurent":
        return cls(field, {int(key[2:]): field.from_json(value) for key, value in data.items()})

    def __repr__(self):
        if self.is_zero():
            return "0"
        return " + ".join(f"{self.field.to_json(self.coefficient(n))}*X^{n}" for n in self.exponents())


CokernelCharacter = Union[TorusCharacter, ZeroRepresentation]


def ind_cokernel(op: HeckeLaurent, lam, units: TorusUnits,
                 central: PadicCharacter) -> CokernelCharacter:
    """
    coker(op - lam) on ind_{ZK_T}^T(units) with central character `central`.
    A one-dimensional cokernel is returned as the torus character it carries.
    """
    field = op.field
    if central.field != field:
        raise InvalidParameterError("central character lives over a different field")
    if central.e != units.central_exponent:
        raise InvalidParameterError(
            f"central exponent {central.e} does not match units {units.to_json()}")
    q = op.minus_scalar(lam)
    if q.is_zero():
        raise NotACharacterError("op - lambda vanishes: the cokernel is the whole induced module")
    exponents = q.exponents()
    span = exponents[-1] - exponents[0]
    logger.debug("ind_cokernel: op - lambda = %r, span %d", q, span)
    if span == 0:
        return ZERO
    if span > 1:
        raise NotACharacterError(f"cokernel has dimension {span}")
    low, high = exponents
    rho = -q.coefficient(low) / q.coefficient(high)
    chi1 = PadicCharacter(field, int(rho ** -1), units.e1)
    chi2 = PadicCharacter(field, int(central.value_at_p * rho), units.e2)
    return TorusCharacter(chi1, chi2)


def cokernel_dimension(op: HeckeLaurent) -> int:
    if op.is_zero():
        raise NotACharacterError("zero operator has infinite-dimensional cokernel")
    exponents = op.exponents()
    return exponents[-1] - exponents[0]


# -- localisation of finite-dimensional modules ---------------------------------

def eventual_image(z):
    """Columns span the image of z^n for n = dim, where z acts invertibly."""
    return mat_image(mat_power(z, z.shape[0]))


def localize_finite(z) -> int:
    """Dimension of ind_{C+}^C V for the action z on a finite-dimensional V."""
    return mat_rank(mat_power(z, z.shape[0]))


def _restricted(z, basis):
    return solve_columns(basis, z @ basis)


def localization_map(z):
    """
    The canonical map V -> ind_{C+}^C V in coordinates of `eventual_image(z)`:
    v -> (z|_E)^-n z^n v.
    """
    n = z.shape[0]
    basis = eventual_image(z)
    GF = type(z)
    if basis.shape[1] == 0:
        return GF.Zeros((0, n))
    restricted = _restricted(z, basis)
    coordinates = solve_columns(basis, mat_power(z, n))
    return mat_power(np.linalg.inv(restricted), n) @ coordinates


def localized_map(f, z_source, z_target):
    """ind_{C+}^C of a map f commuting with z, in eventual-image coordinates."""
    source = eventual_image(z_source)
    target = eventual_image(z_target)
    GF = type(f)
    if source.shape[1] == 0 or target.shape[1] == 0:
        return GF.Zeros((target.shape[1], source.shape[1]))
    return solve_columns(target, f @ source)
