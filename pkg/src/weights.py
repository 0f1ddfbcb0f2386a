"""
Weights Sym^r(k^2) ⊗ det^e of GL2(Z_p), with basis x^r, x^(r-1) y, ..., y^r
and g = [[a, b], [c, d]] acting by f(x, y) -> f(ax + cy, bx + dy) det^e.
Central p-powers act trivially.
"""
import functools
import logging
from dataclasses import dataclass
from fractions import Fraction

import galois

from src.cohomology import SmoothZpModule
from src.ffield import FieldSpec, mat_kernel, solve_exact
from src.padic import GMatrix, central_exponent
from src.torus import TorusUnits
from src.utils import InvalidParameterError

logger = logging.getLogger(__name__)

# "<y>" in the definition of the Barthel-Livne operator is read as <y^r>:
# proj_Y returns the coefficient of y^r.
Y_PROJECTS_ONTO_TOP_POWER = True


@dataclass(frozen=True)
class Weight:
    r: int
    e: int
    field: FieldSpec

    def __post_init__(self):
        p = self.field.p
        if not 0 <= self.r <= p - 1:
            raise InvalidParameterError(f"r must lie in [0, {p - 1}], got {self.r}")
        if not 0 <= self.e < max(p - 1, 1):
            raise InvalidParameterError(f"e must lie in [0, {p - 2}], got {self.e}")

    @property
    def dim(self) -> int:
        return self.r + 1

    @property
    def p(self) -> int:
        return self.field.p

    def vector(self, coeffs) -> galois.FieldArray:
        if len(coeffs) != self.dim:
            raise InvalidParameterError(f"expected {self.dim} coefficients, got {len(coeffs)}")
        return self.field.GF([int(self.field(c)) for c in coeffs])

    def monomial(self, j: int) -> galois.FieldArray:
        """x^(r-j) y^j."""
        v = self.field.GF.Zeros(self.dim)
        v[j] = 1
        return v

    def x_power(self) -> galois.FieldArray:
        return self.monomial(0)

    def y_power(self) -> galois.FieldArray:
        return self.monomial(self.r)

    def to_json(self) -> dict:
        return {"r": self.r, "e": self.e, "p": self.field.p, "k": self.field.k}

    def label(self) -> str:
        return f"Sym^{self.r} ⊗ det^{self.e}"


def _poly_mul(f: list[int], g: list[int], p: int) -> list[int]:
    result = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            result[i + j] = (result[i + j] + a * b) % p
    return result


@functools.lru_cache(maxsize=None)
def _action_residues(p: int, r: int, e: int, a: int, b: int, c: int, d: int) -> tuple:
    """Columns of the action of [[a, b], [c, d]] mod p; lists are indexed by y-degree."""
    det = pow((a * d - b * c) % p, e, p)
    columns = []
    for j in range(r + 1):
        image = [1]
        for _ in range(r - j):
            image = _poly_mul(image, [a, c], p)
        for _ in range(j):
            image = _poly_mul(image, [b, d], p)
        columns.append(tuple(x * det % p for x in image))
    return tuple(columns)


def _residue(x: Fraction, p: int) -> int:
    return x.numerator * pow(x.denominator, -1, p) % p


def reduce_k_part(g: GMatrix) -> tuple[int, int, int, int]:
    """Residue mod p of g / p^s, g in p^s GL2(Z_p)."""
    s = central_exponent(g)
    kappa = g.scaled(Fraction(g.p) ** -s)
    return tuple(_residue(x, g.p) for x in (kappa.a, kappa.b, kappa.c, kappa.d))


@functools.lru_cache(maxsize=None)
def _action_matrix_cached(weight: Weight, residues: tuple) -> galois.FieldArray:
    columns = _action_residues(weight.p, weight.r, weight.e, *residues)
    GF = weight.field.GF
    return GF([[columns[j][i] for j in range(weight.dim)] for i in range(weight.dim)])


def action_matrix(weight: Weight, g: GMatrix) -> galois.FieldArray:
    if g.p != weight.p:
        raise InvalidParameterError("group element and weight use different primes")
    return _action_matrix_cached(weight, reduce_k_part(g))


def act(g: GMatrix, v: galois.FieldArray, weight: Weight) -> galois.FieldArray:
    return action_matrix(weight, g) @ v


def gamma_matrix(weight: Weight) -> galois.FieldArray:
    return action_matrix(weight, GMatrix.unipotent(weight.p, 1))


def proj_X(v: galois.FieldArray):
    return v[0]


def proj_Y(v: galois.FieldArray):
    return v[-1] if Y_PROJECTS_ONTO_TOP_POWER else v[1]


def projection_X_matrix(weight: Weight) -> galois.FieldArray:
    """v -> X(v) x^r."""
    M = weight.field.GF.Zeros((weight.dim, weight.dim))
    M[0, 0] = 1
    return M


def projection_Y_matrix(weight: Weight) -> galois.FieldArray:
    """v -> Y(v) y^r."""
    M = weight.field.GF.Zeros((weight.dim, weight.dim))
    M[weight.r, weight.r] = 1
    return M


def ku_invariants(weight: Weight) -> galois.FieldArray:
    """Basis (columns) of H^0(K_U, W) = <x^r>."""
    GF = weight.field.GF
    return mat_kernel(gamma_matrix(weight) - GF.Identity(weight.dim))


@dataclass(frozen=True, eq=False)
class Coinvariants:
    """W_{K_U}, one-dimensional, with eta normalised by eta(y^r) = 1."""
    weight: Weight
    functional: galois.FieldArray

    def eta(self, v: galois.FieldArray):
        return self.functional @ v


def ku_coinvariants(weight: Weight) -> Coinvariants:
    GF = weight.field.GF
    minus_identity = gamma_matrix(weight) - GF.Identity(weight.dim)
    left_kernel = mat_kernel(minus_identity.T).T
    if left_kernel.shape[0] != 1:
        raise InvalidParameterError(f"coinvariants of {weight.label()} are not one-dimensional")
    functional = left_kernel[0]
    return Coinvariants(weight, functional / functional[weight.r])


def _unit_eigenvalue(weight: Weight, g: GMatrix, vector) -> galois.FieldArray:
    image = action_matrix(weight, g) @ vector
    index = next(i for i in range(weight.dim) if vector[i] != 0)
    return image[index] / vector[index]


def _exponent_of(weight: Weight, value) -> int:
    return int(galois.GF(weight.p)(int(value)).log())


def _generator(p: int) -> int:
    return int(galois.GF(p).primitive_element)


def kt_character_on_invariants(weight: Weight) -> TorusUnits:
    """K_T acting on H^0(K_U, W)."""
    p = weight.p
    g0 = _generator(p)
    basis = ku_invariants(weight)[:, 0]
    e1 = _exponent_of(weight, _unit_eigenvalue(weight, GMatrix.diag(p, g0, 1), basis))
    e2 = _exponent_of(weight, _unit_eigenvalue(weight, GMatrix.diag(p, 1, g0), basis))
    return TorusUnits(p, e1, e2)


def kt_character_on_coinvariants(weight: Weight) -> TorusUnits:
    """K_T acting on W_{K_U}: eta o m = c(m) eta."""
    p = weight.p
    g0 = _generator(p)
    eta = ku_coinvariants(weight).functional
    values = []
    for m in (GMatrix.diag(p, g0, 1), GMatrix.diag(p, 1, g0)):
        pulled_back = eta @ action_matrix(weight, m)
        values.append(pulled_back[weight.r] / eta[weight.r])
    return TorusUnits(p, _exponent_of(weight, values[0]), _exponent_of(weight, values[1]))


def weight_module(weight: Weight) -> SmoothZpModule:
    """W restricted to K_U, with the action of unit (and central) diagonal elements."""
    return SmoothZpModule(weight.field, gamma_matrix(weight),
                          lambda m: action_matrix(weight, m), weight.label())


def invariant_coordinate(weight: Weight, v) -> galois.FieldArray:
    """Coordinate of a K_U-invariant vector in the basis of ku_invariants."""
    return solve_exact(ku_invariants(weight), v)[0]
