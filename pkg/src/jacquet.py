"""
L^0(U, V) and L^-1(U, V) for the irreducible smooth representations of
GL2(Q_p) with central character, through the presentation
V(r, lambda, chi) = coker(Phi - lambda) ⊗ chi∘det and the Satake maps.
"""
import enum
import functools
import logging
from dataclasses import dataclass
from typing import Optional

from src.cohomology import hecke_character, trivial_module, twist_by_delta
from src.ffield import FieldSpec, field_embed, field_make, field_sqrt
from src.gl2ind import phi_power
from src.satake import satake0, satake1, satake_units
from src.torus import (ZERO, CokernelCharacter, HeckeLaurent, PadicCharacter, ind_cokernel)
from src.utils import InvalidParameterError, SequenceBookkeepingError
from src.weights import Weight

logger = logging.getLogger(__name__)


class RepresentationType(str, enum.Enum):
    CHARACTER = "character"
    SPECIAL = "special"
    PRINCIPAL = "principal"
    SUPERSINGULAR = "supersingular"


@dataclass(frozen=True)
class IrreducibleLabel:
    kind: RepresentationType
    chi: Optional[PadicCharacter] = None
    chi1: Optional[PadicCharacter] = None
    chi2: Optional[PadicCharacter] = None
    r: int = 0

    @classmethod
    def character(cls, chi: PadicCharacter) -> "IrreducibleLabel":
        return cls(RepresentationType.CHARACTER, chi=chi)

    @classmethod
    def special(cls, chi: PadicCharacter) -> "IrreducibleLabel":
        return cls(RepresentationType.SPECIAL, chi=chi)

    @classmethod
    def principal(cls, chi1: PadicCharacter, chi2: PadicCharacter) -> "IrreducibleLabel":
        if chi1 == chi2:
            raise InvalidParameterError(
                "principal series needs chi1 != chi2: i_T^G(chi ⊠ chi) is reducible")
        if chi1.field != chi2.field:
            raise InvalidParameterError("chi1 and chi2 live over different fields")
        return cls(RepresentationType.PRINCIPAL, chi1=chi1, chi2=chi2)

    @classmethod
    def supersingular(cls, r: int, chi: PadicCharacter) -> "IrreducibleLabel":
        if not 0 <= r <= chi.field.p - 1:
            raise InvalidParameterError(f"r must lie in [0, {chi.field.p - 1}], got {r}")
        return cls(RepresentationType.SUPERSINGULAR, chi=chi, r=r)

    def label(self) -> str:
        if self.kind is RepresentationType.CHARACTER:
            return f"{self.chi.label()} ∘ det"
        if self.kind is RepresentationType.SPECIAL:
            return f"Sp ⊗ {self.chi.label()} ∘ det"
        if self.kind is RepresentationType.PRINCIPAL:
            return f"i_T^G({self.chi1.label()} ⊠ {self.chi2.label()})"
        return f"V({self.r}, 0, {self.chi.label()})"


@dataclass(frozen=True)
class JacquetResult:
    """L^0 and L^-1; every other degree vanishes."""
    L0: CokernelCharacter
    L1: CokernelCharacter

    def component(self, i: int) -> CokernelCharacter:
        """L^{-i}(U, V)."""
        if i == 0:
            return self.L0
        if i == 1:
            return self.L1
        return ZERO

    def twist(self, chi: PadicCharacter) -> "JacquetResult":
        return JacquetResult(self.L0.twist(chi), self.L1.twist(chi))

    def to_json(self) -> dict:
        return {"L-1": self.L1.to_json(), "L0": self.L0.to_json()}


def validate_presentation(r: int, lam, field: FieldSpec) -> None:
    """V(r, lambda) is irreducible unless (r, lambda) is (0, +-1) or (p-1, +-1)."""
    p = field.p
    if not 0 <= r <= p - 1:
        raise InvalidParameterError(f"r must lie in [0, {p - 1}], got {r}")
    lam = field(lam)
    if r in (0, p - 1) and (lam == field(1) or lam == field(-1)):
        raise InvalidParameterError(f"V({r}, {field.to_json(lam)}) is reducible")


@functools.lru_cache(maxsize=None)
def _satake_of_phi(weight: Weight) -> tuple[HeckeLaurent, HeckeLaurent]:
    phi = phi_power(weight, 1)
    return satake0(phi, weight), satake1(phi, weight)


def jacquet_of_presentation(r: int, lam, chi: PadicCharacter) -> JacquetResult:
    """
    L(U, V(r, lambda, chi)) from coker(S^i(Phi) - lambda) on the torus
    inductions, twisted by chi ⊠ chi.
    """
    field = chi.field
    lam = field(lam)
    weight = Weight(r, 0, field)
    op0, op1 = _satake_of_phi(weight)
    if op0.minus_scalar(lam).is_zero():
        raise SequenceBookkeepingError("S^0(Phi) - lambda vanishes; Phi - lambda cannot be injective")
    units0, units1 = satake_units(weight, 0), satake_units(weight, 1)
    L0 = ind_cokernel(op0, lam, units0, PadicCharacter(field, 1, units0.central_exponent))
    L1 = ind_cokernel(op1, lam, units1, PadicCharacter(field, 1, units1.central_exponent))
    logger.debug("V(%d, %s): L0 %r, L-1 %r before twisting", r, field.to_json(lam), L0, L1)
    return JacquetResult(L0, L1).twist(chi)


def character_case(chi: PadicCharacter) -> JacquetResult:
    """L(U, chi∘det) from the Hecke action on H^*(K_U, delta)."""
    module = twist_by_delta(trivial_module(chi.field))
    L1 = hecke_character(module, 0)
    L0 = hecke_character(module, 1)
    return JacquetResult(L0, L1).twist(chi)


def _kernel_of_surjection(middle: CokernelCharacter, quotient: CokernelCharacter,
                          degree: str) -> CokernelCharacter:
    """A in 0 -> A -> middle -> quotient -> 0 with one-dimensional or zero terms."""
    if quotient is ZERO:
        return middle
    if middle is ZERO:
        raise SequenceBookkeepingError(f"{degree}: zero cannot surject onto {quotient.label()}")
    if middle != quotient:
        raise SequenceBookkeepingError(
            f"{degree}: no equivariant surjection {middle.label()} -> {quotient.label()}")
    return ZERO


def special_series_via_les(chi: PadicCharacter) -> JacquetResult:
    """
    L(U, Sp ⊗ chi∘det) from 0 -> Sp -> V(0, 1) -> 1 -> 0, twisted by chi.
    The long exact sequence reads
    0 -> L^-1(Sp) -> L^-1(V(0,1)) -> L^-1(1) -> L^0(Sp) -> L^0(V(0,1)) -> L^0(1) -> 0.
    """
    field = chi.field
    trivial = PadicCharacter.trivial(field)
    middle = jacquet_of_presentation(0, 1, trivial)
    quotient = character_case(trivial)
    if quotient.L1 is not ZERO:
        raise SequenceBookkeepingError("L^-1 of the trivial character does not vanish")
    L1 = middle.L1
    L0 = _kernel_of_surjection(middle.L0, quotient.L0, "L^0")
    return JacquetResult(L0, L1).twist(chi)


def _extended_if_needed(chi1: PadicCharacter, chi2: PadicCharacter):
    """Square root of lambda1 lambda2, doubling the field degree when required."""
    field = chi1.field
    product = chi1.value_at_p * chi2.value_at_p
    root = field_sqrt(field, product)
    if root is not None:
        return chi1, chi2, root
    large = field_make(field.p, 2 * field.k)
    logger.warning("lambda1 lambda2 is not a square in %s; extending to %s",
                   field.label(), large.label())
    embed = field_embed(field, large)
    chi1, chi2 = chi1.embed(embed, large), chi2.embed(embed, large)
    root = field_sqrt(large, chi1.value_at_p * chi2.value_at_p)
    return chi1, chi2, root


def principal_series(chi1: PadicCharacter, chi2: PadicCharacter) -> JacquetResult:
    """
    i_T^G(chi1 ⊠ chi2) = V(r, lambda2/lambda, mu_lambda omega^r1) with
    r = r2 - r1 mod p-1 and lambda^2 = lambda1 lambda2.
    """
    p = chi1.field.p
    chi1, chi2, root = _extended_if_needed(chi1, chi2)
    r = (chi2.e - chi1.e) % (p - 1)
    chi = PadicCharacter(chi1.field, int(root), chi1.e)
    return jacquet_of_presentation(r, chi2.value_at_p / root, chi)


def table1(label: IrreducibleLabel) -> JacquetResult:
    if label.kind is RepresentationType.CHARACTER:
        return character_case(label.chi)
    if label.kind is RepresentationType.SPECIAL:
        return special_series_via_les(label.chi)
    if label.kind is RepresentationType.PRINCIPAL:
        return principal_series(label.chi1, label.chi2)
    if label.kind is RepresentationType.SUPERSINGULAR:
        return jacquet_of_presentation(label.r, 0, label.chi)
    raise InvalidParameterError(f"unknown representation type {label.kind}")


def table1_rows(field: FieldSpec) -> list[tuple[IrreducibleLabel, JacquetResult]]:
    """One representative label per row: 1, Steinberg, 1 ⊠ omega, V(0, 0)."""
    trivial = PadicCharacter.trivial(field)
    other = PadicCharacter.omega(field)
    if other == trivial:
        # omega is trivial for p = 2; fall back to an unramified twist
        if field.order == 2:
            raise InvalidParameterError("GF(2) carries a single smooth character; use --ext-degree 2")
        other = PadicCharacter(field, int(field.GF.primitive_element), 0)
    labels = [
        IrreducibleLabel.character(trivial),
        IrreducibleLabel.special(trivial),
        IrreducibleLabel.principal(trivial, other),
        IrreducibleLabel.supersingular(0, trivial),
    ]
    return [(label, table1(label)) for label in labels]
