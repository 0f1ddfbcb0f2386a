"""
The mod-p Satake maps in degrees 0 and 1 computed from their coset-sum
formulas, the projection calculus mu_{m,g}, and the unwinding of
K_U-invariants of ind_{K_B}^B W onto ind_{K_T}^T H^0(K_U, W).

Torus classes are indexed by n with t_n = diag(p^n, 1); the value of the
Satake image at t_n is the coefficient of X^n.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional

import galois
import numpy as np

from src.cohomology import delta_character
from src.ffield import mat_kernel, mat_power
from src.gl2ind import HeckePoly, IndElement, evaluate, phi_poly
from src.padic import (BorelCoset, GMatrix, borel_coset, enumerate_ucosets,
                       residue_mod, unit_part, valuation)
from src.torus import HeckeLaurent, TorusUnits
from src.utils import InvalidParameterError, TruncationError
from src.weights import (Weight, action_matrix, gamma_matrix, invariant_coordinate,
                         kt_character_on_coinvariants, kt_character_on_invariants,
                         ku_coinvariants, ku_invariants)

logger = logging.getLogger(__name__)


def _torus_element(p: int, n: int) -> GMatrix:
    return GMatrix.diag(p, Fraction(p) ** n, 1)


def _coset_point(p: int, u, n: int, degree: int) -> GMatrix:
    t = _torus_element(p, n)
    return u.matrix() @ t if degree == 0 else t @ u.matrix()


def _satake_input(endo: HeckePoly, weight: Weight, degree: int) -> IndElement:
    if degree == 0:
        vector = weight.y_power()
    elif degree == 1:
        vector = ku_invariants(weight)[:, 0]
    else:
        raise InvalidParameterError(f"explicit Satake formulas exist in degrees 0 and 1, not {degree}")
    return phi_poly(endo, IndElement.basis(weight, vector))


def coset_sums(f: IndElement, degree: int, depth: int, window: int) -> dict[int, galois.FieldArray]:
    """
    n -> sum over u in U/K_U of f(u t_n) (degree 0) or f(t_n u) (degree 1),
    for |n| <= window, truncated to classes of depth <= depth.
    """
    p = f.weight.p
    cosets = enumerate_ucosets(p, depth)
    sums = {}
    for n in range(-window, window + 1):
        total = f.weight.field.GF.Zeros(f.weight.dim)
        for u in cosets:
            total = total + evaluate(f, _coset_point(p, u, n, degree))
        sums[n] = total
    return sums


def check_shell(f: IndElement, degree: int, depth: int, window: int) -> None:
    """Every (u, n) just outside the truncation must contribute zero."""
    p = f.weight.p
    inner = set(enumerate_ucosets(p, depth))
    outer = enumerate_ucosets(p, depth + 1)
    for n in range(-window - 1, window + 2):
        on_edge = abs(n) > window
        for u in outer:
            if not on_edge and u in inner:
                continue
            if np.count_nonzero(evaluate(f, _coset_point(p, u, n, degree))):
                raise TruncationError(
                    f"nonzero term at n={n}, u={u.u.value} beyond depth {depth}, window {window}")
    logger.debug("shell check passed (degree %d, depth %d, window %d)", degree, depth, window)


def satake(endo: HeckePoly, weight: Weight, degree: int, depth: Optional[int] = None) -> HeckeLaurent:
    f = _satake_input(endo, weight, degree)
    if depth is None:
        depth = f.support_radius()
    window = depth
    logger.debug("satake degree %d of %s on %s: depth %d", degree, endo, weight.label(), depth)
    sums = coset_sums(f, degree, depth, window)
    check_shell(f, degree, depth, window)
    if degree == 0:
        eta = ku_coinvariants(weight)
        coefficients = {n: eta.eta(v) for n, v in sums.items()}
    else:
        coefficients = {n: invariant_coordinate(weight, v) for n, v in sums.items()}
    return HeckeLaurent(weight.field, coefficients)


def satake0(endo: HeckePoly, weight: Weight, depth: Optional[int] = None) -> HeckeLaurent:
    """S^0(endo) on ind_{ZK_T}^T(W_{K_U})."""
    return satake(endo, weight, 0, depth)


def satake1(endo: HeckePoly, weight: Weight, depth: Optional[int] = None) -> HeckeLaurent:
    """S^1(endo) on ind_{ZK_T}^T(delta ⊗ H^0(K_U, W))."""
    return satake(endo, weight, 1, depth)


def satake_units(weight: Weight, degree: int) -> TorusUnits:
    """Unit character of the torus induction the degree-`degree` Satake map lands in."""
    if degree == 0:
        return kt_character_on_coinvariants(weight)
    return kt_character_on_invariants(weight) * delta_character(weight.field).units


# -- the projection calculus --------------------------------------------------

def _borel_exponent(g: GMatrix) -> int:
    """c = val(delta) - val(alpha): g^-1 n(x) g = n(x delta / alpha) up to units."""
    if not g.is_upper_triangular():
        raise InvalidParameterError(f"{g} is not in the Borel subgroup")
    return valuation(g.d, g.p) - valuation(g.a, g.p)


def unipotent_level(g: GMatrix) -> int:
    """l with K_U^g ∩ K_P = p^l K_U."""
    return max(_borel_exponent(g), 0)


def mu_domain(g: GMatrix, weight: Weight) -> galois.FieldArray:
    """Basis of H^0(K_U^g ∩ K_P, W)."""
    GF = weight.field.GF
    power = mat_power(gamma_matrix(weight), weight.p ** unipotent_level(g))
    return mat_kernel(power - GF.Identity(weight.dim))


def mu_projection(m: GMatrix, g: GMatrix, weight: Weight) -> galois.FieldArray:
    """sum over u in (K_U^{mg} ∩ K_P)/(K_U^g ∩ K_P) of u."""
    if not m.is_diagonal() or valuation(m.a / m.d, m.p) < 0:
        raise InvalidParameterError(f"{m} is not a positive torus element")
    p = weight.p
    level = unipotent_level(g)
    target_level = unipotent_level(m @ g)
    step = mat_power(gamma_matrix(weight), p ** target_level)
    GF = weight.field.GF
    total = GF.Zeros((weight.dim, weight.dim))
    power = GF.Identity(weight.dim)
    for _ in range(p ** (level - target_level)):
        total = total + power
        power = power @ step
    return total


def positive_translate(g: GMatrix) -> GMatrix:
    """A positive m with m g in P+."""
    return GMatrix.diag(g.p, Fraction(g.p) ** unipotent_level(g), 1)


def mu(g: GMatrix, weight: Weight, m: Optional[GMatrix] = None) -> galois.FieldArray:
    """mu_g = mu_{m,g} for any positive m with m g in P+."""
    m = m or positive_translate(g)
    if unipotent_level(m @ g):
        raise InvalidParameterError(f"{m} does not move {g} into P+")
    return mu_projection(m, g, weight)


# -- ind_{K_B}^B W and its K_U-invariants -------------------------------------

class BorelIndElement:
    """sum [rep(c), w_c] over cosets c in B/K_B."""

    def __init__(self, weight: Weight, terms: Optional[Mapping[BorelCoset, galois.FieldArray]] = None):
        self.weight = weight
        self.terms: dict[BorelCoset, galois.FieldArray] = {}
        for coset, vector in (terms or {}).items():
            self._accumulate(coset, vector)

    def _accumulate(self, coset: BorelCoset, vector) -> None:
        if coset in self.terms:
            vector = self.terms[coset] + vector
        if np.count_nonzero(vector):
            self.terms[coset] = vector
        else:
            self.terms.pop(coset, None)

    @classmethod
    def from_term(cls, weight: Weight, g: GMatrix, vector) -> "BorelIndElement":
        coset, h = borel_coset(g)
        return cls(weight, {coset: action_matrix(weight, h) @ vector})

    def __add__(self, other: "BorelIndElement") -> "BorelIndElement":
        result = BorelIndElement(self.weight, self.terms)
        for coset, vector in other.terms.items():
            result._accumulate(coset, vector)
        return result

    def __eq__(self, other):
        if not isinstance(other, BorelIndElement):
            return NotImplemented
        if self.terms.keys() != other.terms.keys():
            return False
        return all(np.array_equal(w, other.terms[c]) for c, w in self.terms.items())

    def __repr__(self):
        return f"BorelIndElement({self.weight.label()}, {len(self.terms)} terms)"


def act_b(g: GMatrix, f: BorelIndElement) -> BorelIndElement:
    result = BorelIndElement(f.weight)
    for coset, vector in f.terms.items():
        target, h = borel_coset(g @ coset.matrix())
        result._accumulate(target, action_matrix(f.weight, h) @ vector)
    return result


def orbit_sum(g: GMatrix, vector, weight: Weight) -> BorelIndElement:
    """[K_U g, w] = sum over u in K_U/(K_U ∩ g K_B g^-1) of [u g, w]."""
    p = weight.p
    result = BorelIndElement(weight)
    for j in range(p ** max(-_borel_exponent(g), 0)):
        term = BorelIndElement.from_term(weight, GMatrix.unipotent(p, j) @ g, vector)
        result = result + term
    return result


def hecke_b(m: GMatrix, f: BorelIndElement) -> BorelIndElement:
    """m ⋆ f = sum over u in K_U/m K_U m^-1 of u m f."""
    if not m.is_diagonal() or valuation(m.a / m.d, m.p) < 0:
        raise InvalidParameterError(f"{m} is not a positive torus element")
    p = m.p
    result = BorelIndElement(f.weight)
    for j in range(p ** valuation(m.a / m.d, p)):
        result = result + act_b(GMatrix.unipotent(p, j) @ m, f)
    return result


@dataclass(eq=False)
class TorusIndElement:
    """sum [diag(p^a, p^b), w] in ind_{K_T}^T H^0(K_U, W)."""
    weight: Weight
    terms: dict

    def __post_init__(self):
        self.terms = {key: vector for key, vector in self.terms.items() if np.count_nonzero(vector)}

    def __add__(self, other: "TorusIndElement") -> "TorusIndElement":
        terms = dict(self.terms)
        for key, vector in other.terms.items():
            terms[key] = terms[key] + vector if key in terms else vector
        return TorusIndElement(self.weight, terms)

    def translate(self, m: GMatrix) -> "TorusIndElement":
        """Left translation by a diagonal m."""
        p = self.weight.p
        s, t = valuation(m.a, p), valuation(m.d, p)
        units = action_matrix(self.weight, GMatrix.diag(p, unit_part(m.a, p), unit_part(m.d, p)))
        return TorusIndElement(self.weight, {(a + s, b + t): units @ v for (a, b), v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, TorusIndElement):
            return NotImplemented
        if self.terms.keys() != other.terms.keys():
            return False
        return all(np.array_equal(v, other.terms[key]) for key, v in self.terms.items())


def unwind_symbol(g: GMatrix, vector, weight: Weight) -> TorusIndElement:
    """1 ⊗ [K_U g, w] -> [pr_T(g), mu_g(w)]."""
    p = weight.p
    units = GMatrix.diag(p, unit_part(g.a, p), unit_part(g.d, p))
    image = action_matrix(weight, units) @ mu(g, weight) @ vector
    key = (valuation(g.a, p), valuation(g.d, p))
    return TorusIndElement(weight, {key: image})


def orbit_representative(coset: BorelCoset) -> GMatrix:
    """[[p^a, u0], [0, p^b]] with u0 reduced mod p^min(a,b): a K_U-orbit representative."""
    p = coset.p
    u0 = residue_mod(coset.u.value, p, min(coset.a, coset.b))
    return GMatrix(p, Fraction(p) ** coset.a, u0, 0, Fraction(p) ** coset.b)


def unwind(f: BorelIndElement) -> TorusIndElement:
    """Unwinding of a K_U-invariant element, one K_U-orbit of cosets at a time."""
    p = f.weight.p
    if act_b(GMatrix.unipotent(p, 1), f) != f:
        raise InvalidParameterError("unwind expects a K_U-invariant element")
    result = TorusIndElement(f.weight, {})
    seen = set()
    for coset in f.terms:
        g0 = orbit_representative(coset)
        key, _ = borel_coset(g0)
        if key in seen:
            continue
        seen.add(key)
        result = result + unwind_symbol(g0, f.terms[key], f.weight)
    return result


def double_coset_partition(p: int, window: int) -> dict[tuple[int, int], int]:
    """
    Partition the cosets of P+/K_B with |a|, |b| <= window into left K_U-orbits;
    returns the number of orbits over each torus class (a, b), a >= b.
    """
    orbits: dict[tuple[int, int], int] = {}
    gamma = GMatrix.unipotent(p, 1)
    for a in range(-window, window + 1):
        for b in range(-window, a + 1):
            torus = GMatrix.diag(p, Fraction(p) ** a, Fraction(p) ** b)
            cosets = {borel_coset(GMatrix.unipotent(p, t) @ torus)[0] for t in range(p ** (a - b))}
            remaining = set(cosets)
            count = 0
            while remaining:
                start = remaining.pop()
                count += 1
                current = borel_coset(gamma @ start.matrix())[0]
                while current != start:
                    remaining.discard(current)
                    current = borel_coset(gamma @ current.matrix())[0]
            orbits[(a, b)] = count
    return orbits


def h0_coordinates(element: TorusIndElement) -> dict[tuple[int, int], galois.FieldArray]:
    """Coordinates of each torus component in the basis of H^0(K_U, W)."""
    return {key: invariant_coordinate(element.weight, v) for key, v in element.terms.items()}
