"""
Continuous cohomology of K_U = [[1, Z_p], [0, 1]] ~ Z_p with coefficients in
finite-dimensional smooth modules.

A module is given by the action of gamma = [[1, 1], [0, 1]]; the action of
diagonal elements (needed for conjugation) is an optional callable.
H^0 = ker(gamma - 1) and H^1 = coker(gamma - 1).
"""
import logging
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from itertools import count
from typing import Callable, Optional

import galois
import numpy as np

from src import config
from src.ffield import (Cokernel, FieldSpec, is_zero, mat_cokernel, mat_kernel, mat_power,
                        mat_rank, solve_columns, solve_exact)
from src.padic import GMatrix, unit_part, valuation
from src.torus import (ZERO, CokernelCharacter, PadicCharacter, TorusCharacter,
                       localize_finite)
from src.utils import (InvalidParameterError, ModpSatakeError, NotACharacterError,
                       OracleRangeError)

logger = logging.getLogger(__name__)

DiagonalAction = Callable[[GMatrix], galois.FieldArray]


@dataclass(frozen=True, eq=False)
class SmoothZpModule:
    field: FieldSpec
    gamma: galois.FieldArray
    diagonal_action: Optional[DiagonalAction] = None
    label: str = ""
    level: int = dataclass_field(init=False)

    def __post_init__(self):
        if self.gamma.ndim != 2 or self.gamma.shape[0] != self.gamma.shape[1]:
            raise InvalidParameterError(f"gamma must be square, got shape {self.gamma.shape}")
        object.__setattr__(self, "level", _smooth_level(self.field.p, self.gamma))

    @property
    def dim(self) -> int:
        return self.gamma.shape[0]

    def act_diagonal(self, m: GMatrix) -> galois.FieldArray:
        if self.diagonal_action is None:
            raise InvalidParameterError(f"module {self.label or '?'} carries no torus action")
        return self.diagonal_action(m)

    def restricted(self, a: int) -> "SmoothZpModule":
        """The same space as a module for p^a K_U, generated by gamma^(p^a)."""
        return SmoothZpModule(self.field, mat_power(self.gamma, self.field.p ** a),
                              self.diagonal_action, f"{self.label}|p^{a}")


def _smooth_level(p: int, gamma) -> int:
    identity = type(gamma).Identity(gamma.shape[0])
    power, level = gamma, 0
    while True:
        if np.array_equal(power, identity):
            return level
        if p ** level >= max(gamma.shape[0], 1):
            raise InvalidParameterError("gamma has no p-power order: the action is not smooth")
        power = mat_power(power, p)
        level += 1


@dataclass(frozen=True, eq=False)
class CohomologyClass:
    degree: int
    vector: galois.FieldArray


def trivial_module(field: FieldSpec, dim: int = 1) -> SmoothZpModule:
    GF = field.GF
    return SmoothZpModule(field, GF.Identity(dim), lambda m: GF.Identity(dim), "trivial")


def character_module(chi: TorusCharacter) -> SmoothZpModule:
    """An inflated torus character: K_U acts trivially, diag(a, d) by chi."""
    field = chi.chi1.field
    GF = field.GF
    return SmoothZpModule(field, GF.Identity(1), lambda m: GF([[chi(m)]]), chi.label())


def twist_by_delta(module: SmoothZpModule) -> SmoothZpModule:
    field = module.field

    def action(m: GMatrix):
        return module.act_diagonal(m) * delta_from_cohomology(m, field)

    return SmoothZpModule(field, module.gamma, action, f"δ⊗{module.label}")


def _minus_identity(gamma):
    return gamma - type(gamma).Identity(gamma.shape[0])


def geometric_sum(gamma, count_: int):
    """sum_{i < count} gamma^i."""
    GF = type(gamma)
    total = GF.Zeros(gamma.shape)
    power = GF.Identity(gamma.shape[0])
    for _ in range(count_):
        total = total + power
        power = power @ gamma
    return total


def h0(module: SmoothZpModule):
    """Basis (columns) of ker(gamma - 1)."""
    return mat_kernel(_minus_identity(module.gamma))


def h1(module: SmoothZpModule) -> Cokernel:
    return mat_cokernel(_minus_identity(module.gamma))


def cohomology_class(module: SmoothZpModule, degree: int, v) -> CohomologyClass:
    """Coordinates of v in the H^0 basis, or of its class in H^1."""
    if degree == 0:
        return CohomologyClass(0, solve_exact(h0(module), v))
    if degree == 1:
        return CohomologyClass(1, h1(module).coordinates(v))
    raise InvalidParameterError(f"K_U has cohomological dimension 1; degree {degree} requested")


# -- brute-force oracles on finite quotients ----------------------------------

@dataclass(frozen=True)
class OracleResult:
    h0_dim: int
    h1_dim: int
    m: int


def _oracle_exponent(module: SmoothZpModule, start: int = 0) -> int:
    """Smallest m >= max(level, start) with the norm of Z/p^m vanishing on the module."""
    p = module.field.p
    for m in count(max(module.level, start)):
        order = p ** m
        if order > config.ORACLE_MAX_ORDER:
            raise OracleRangeError(
                f"no quotient Z/{p}^m with p^m <= {config.ORACLE_MAX_ORDER} kills the norm")
        if is_zero(geometric_sum(module.gamma, order)):
            return m


def cocycle_oracle(module: SmoothZpModule) -> OracleResult:
    """
    Dimensions of H^0 and H^1 of the finite quotient Z/p^m once the norm
    vanishes.  H^0 is the common fixed space of all group elements.  H^1 is
    Z^1 / B^1, where Z^1 is solved for on full cochain tables c(gamma^j),
    j < p^m, and B^1 is spanned by the tables j -> (gamma^j - 1) v.
    """
    m = _oracle_exponent(module)
    order = module.field.p ** m
    GF = module.field.GF
    dim = module.dim
    identity = GF.Identity(dim)
    powers = [identity]
    for _ in range(order - 1):
        powers.append(powers[-1] @ module.gamma)

    stacked = GF.Zeros((order * dim, dim))
    for j in range(order):
        stacked[j * dim:(j + 1) * dim, :] = powers[j] - identity
    h0_dim = mat_kernel(stacked).shape[1]

    def block(j):
        return slice((j % order) * dim, (j % order + 1) * dim)

    # c(1) = 0 and c(gamma^(j+1)) = c(gamma^j) + gamma^j c(gamma), indices mod p^m
    conditions = GF.Zeros(((order + 1) * dim, order * dim))
    conditions[block(0), block(0)] = identity
    for j in range(order):
        rows = slice((j + 1) * dim, (j + 2) * dim)
        conditions[rows, block(j + 1)] = conditions[rows, block(j + 1)] + identity
        conditions[rows, block(j)] = conditions[rows, block(j)] - identity
        conditions[rows, block(1)] = conditions[rows, block(1)] - powers[j]
    cocycles = mat_kernel(conditions).shape[1]
    h1_dim = cocycles - mat_rank(stacked)
    logger.debug("cocycle_oracle(%s): m=%d, dims (%d, %d)", module.label, m, h0_dim, h1_dim)
    return OracleResult(h0_dim, h1_dim, m)


def transfer_oracle(module: SmoothZpModule, a: int):
    """
    Corestriction H^1(p^a K_U, V) -> H^1(K_U, V) computed on inhomogeneous
    cocycle tables of a finite quotient Z/p^m with transversal {gamma^i : i < p^a}.
    """
    p = module.field.p
    q = p ** a
    sub = module.restricted(a)
    m = max(_oracle_exponent(module), a + _oracle_exponent(sub))
    order = p ** m
    sub_order = order // q
    if order > config.ORACLE_MAX_ORDER:
        raise OracleRangeError(f"transfer oracle needs Z/{p}^{m}")
    GF = module.field.GF
    powers = [GF.Identity(module.dim)]
    for _ in range(order):
        powers.append(powers[-1] @ module.gamma)

    source = h1(sub)
    target = h1(module)
    result = GF.Zeros((target.dim, source.dim))
    for column in range(source.dim):
        w = source.section[:, column]
        # c(gamma^(q k)) for the subgroup cocycle with c(gamma^q) = w
        table = [GF.Zeros(module.dim)]
        for k in range(1, sub_order):
            table.append(table[-1] + powers[q * (k - 1)] @ w)

        def transferred(j: int):
            total = GF.Zeros(module.dim)
            for i in range(q):
                shift = i + j
                representative = shift % q
                k = ((shift - representative) % order) // q
                total = total + powers[representative] @ table[k]
            return total

        values = [transferred(j) for j in range(order)]
        for j in range(order):
            # c(gamma^(j+1)) = c(gamma^j) + gamma^j c(gamma)
            if not np.array_equal(values[(j + 1) % order], values[j] + powers[j] @ values[1 % order]):
                raise ModpSatakeError("transferred cochain is not a cocycle")
        result[:, column] = target.coordinates(values[1 % order])
    return result


# -- restriction, corestriction, conjugation ------------------------------------

def res(module: SmoothZpModule, a: int, degree: int = 1):
    """Restriction H^i(K_U, V) -> H^i(p^a K_U, V) in chosen coordinates."""
    sub = module.restricted(a)
    if degree == 0:
        return solve_columns(h0(sub), h0(module))
    source, target = h1(module), h1(sub)
    norm = geometric_sum(module.gamma, module.field.p ** a)
    return target.projection @ norm @ source.section


def cores(module: SmoothZpModule, a: int, degree: int = 1):
    """Corestriction H^i(p^a K_U, V) -> H^i(K_U, V)."""
    sub = module.restricted(a)
    if degree == 0:
        norm = geometric_sum(module.gamma, module.field.p ** a)
        return solve_columns(h0(module), norm @ h0(sub))
    return h1(module).projection @ h1(sub).section


def positive_exponent(m: GMatrix) -> int:
    """a with m K_U m^-1 = p^a K_U; rejects non-positive m."""
    if not m.is_diagonal():
        raise InvalidParameterError(f"{m} is not diagonal")
    a = valuation(m.a / m.d, m.p)
    if a < 0:
        raise InvalidParameterError(f"{m} is not positive: m K_U m^-1 is not inside K_U")
    return a


def conj(m: GMatrix, module: SmoothZpModule, degree: int = 1):
    """Conjugation H^i(K_U, V) -> H^i(m K_U m^-1, V)."""
    a = positive_exponent(m)
    sub = module.restricted(a)
    action = module.act_diagonal(m)
    if degree == 0:
        return solve_columns(h0(sub), action @ h0(module))
    # m^-1 gamma^(p^a) m = gamma^s with s = (p^-a alpha/delta)^-1, a unit
    p = module.field.p
    ratio = unit_part(m.a / m.d, p) ** -1
    modulus = p ** _oracle_exponent(module)
    s = ratio.numerator * pow(ratio.denominator, -1, modulus) % modulus
    cocycle = action @ geometric_sum(module.gamma, s)
    return h1(sub).projection @ cocycle @ h1(module).section


def hecke(m: GMatrix, module: SmoothZpModule, degree: int = 1):
    """The Hecke action of a positive m: cores o conj."""
    a = positive_exponent(m)
    return cores(module, a, degree) @ conj(m, module, degree)


def delta_from_cohomology(m: GMatrix, field: FieldSpec) -> galois.FieldArray:
    """
    delta(m): the inverse of the Hecke scalar on H^1(K_U, 1), extended to all
    diagonal m through m = (m z^n) z^-n with z = diag(p, 1).
    """
    p = m.p
    module = trivial_module(field)
    exponent = valuation(m.a / m.d, p)
    shift = max(-exponent, 0)
    z = GMatrix.diag(p, p, 1)
    positive = m @ GMatrix.diag(p, Fraction(p) ** shift, 1)
    value = hecke(positive, module, 1)[0, 0] ** -1
    if shift:
        value = value / hecke(z, module, 1)[0, 0] ** -shift
    return value


def delta_character(field: FieldSpec) -> TorusCharacter:
    """delta_B read off from cohomology on diag(p, 1), diag(1, p) and unit generators."""
    return _character_from_scalars(field, lambda m: delta_from_cohomology(m, field))


def _primitive_root(p: int) -> int:
    return int(galois.GF(p).primitive_element)


def _discrete_log(field: FieldSpec, value) -> int:
    residue = int(value)
    if residue >= field.p:
        raise NotACharacterError(f"unit values must lie in GF({field.p})")
    return int(galois.GF(field.p)(residue).log())


def _character_from_scalars(field: FieldSpec, scalar) -> TorusCharacter:
    p = field.p
    g0 = _primitive_root(p)
    lam1 = scalar(GMatrix.diag(p, p, 1))
    lam2 = scalar(GMatrix.diag(p, 1, p))
    e1 = _discrete_log(field, scalar(GMatrix.diag(p, g0, 1)))
    e2 = _discrete_log(field, scalar(GMatrix.diag(p, 1, g0)))
    return TorusCharacter(PadicCharacter(field, int(lam1), e1), PadicCharacter(field, int(lam2), e2))


def hecke_character(module: SmoothZpModule, degree: int) -> CokernelCharacter:
    """
    The torus character carried by ind_{M+}^M H^degree(K_U, V), or ZERO when
    the strictly positive z = diag(p, 1) acts nilpotently.
    """
    p = module.field.p
    z = GMatrix.diag(p, p, 1)
    if localize_finite(hecke(z, module, degree)) == 0:
        return ZERO
    dim = h0(module).shape[1] if degree == 0 else h1(module).dim
    if dim != 1:
        raise NotACharacterError(f"H^{degree} has dimension {dim}")
    zinv = hecke(z, module, degree)[0, 0] ** -1

    def scalar(m: GMatrix):
        # diag(1, p) = diag(p, p) z^-1; diag(p, p) is positive of index one
        if m.a / m.d == Fraction(1, p):
            return hecke(GMatrix.scalar(p, p), module, degree)[0, 0] * zinv
        return hecke(m, module, degree)[0, 0]

    return _character_from_scalars(module.field, scalar)
