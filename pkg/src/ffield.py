"""
Exact arithmetic over GF(p^k) and dense linear algebra on galois FieldArrays.

Matrices are plain 2-D `galois.FieldArray`s.  Subspaces are returned as
matrices whose columns form a basis.
"""
import functools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

import galois
import numpy as np

from src.utils import InconsistentSystemError, InvalidParameterError

logger = logging.getLogger(__name__)


@functools.lru_cache(maxsize=None)
def _galois_field(p: int, k: int, modulus: tuple[int, ...]):
    if k == 1:
        return galois.GF(p)
    poly = galois.Poly(list(reversed(modulus)), field=galois.GF(p))
    return galois.GF(p ** k, irreducible_poly=poly)


def is_irreducible(p: int, modulus: Sequence[int]) -> bool:
    """modulus is an ascending coefficient list of a monic polynomial."""
    degree = len(modulus) - 1
    if degree <= 1:
        return degree == 1
    poly = galois.Poly([c % p for c in reversed(modulus)], field=galois.GF(p))
    if degree <= 3:
        values = poly(galois.GF(p).elements)
        return bool(np.count_nonzero(values) == p)
    return poly.is_irreducible()


@dataclass(frozen=True)
class FieldSpec:
    """GF(p^k) presented as GF(p)[x]/(modulus); modulus coefficients ascending."""
    p: int
    k: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if len(self.modulus) != self.k + 1 or self.modulus[-1] != 1:
            raise InvalidParameterError(f"Modulus must be monic of degree {self.k}: {self.modulus}")
        if not is_irreducible(self.p, self.modulus):
            raise InvalidParameterError(f"Modulus {self.modulus} is reducible over GF({self.p})")

    @property
    def GF(self):
        return _galois_field(self.p, self.k, self.modulus)

    @property
    def order(self) -> int:
        return self.p ** self.k

    def __call__(self, value) -> galois.FieldArray:
        """Embed an integer (reduced mod p into the prime field) or a field element."""
        if isinstance(value, (int, np.integer)):
            return self.GF(int(value) % self.p)
        return self.GF(value)

    def element(self, coeffs: Sequence[int]) -> galois.FieldArray:
        """Element with ascending polynomial coefficients c0 + c1 x + ..."""
        coeffs = [int(c) % self.p for c in coeffs]
        if len(coeffs) > self.k:
            raise InvalidParameterError(f"Too many coefficients for GF({self.p}^{self.k}): {coeffs}")
        coeffs = coeffs + [0] * (self.k - len(coeffs))
        if self.k == 1:
            return self.GF(coeffs[0])
        return self.GF.Vector(coeffs[::-1])

    def coeffs(self, x) -> list[int]:
        if self.k == 1:
            return [int(x)]
        return [int(c) for c in self.GF(x).vector()[::-1]]

    def to_json(self, x):
        """Integers for prime fields, ascending coefficient lists otherwise."""
        return int(x) if self.k == 1 else self.coeffs(x)

    def from_json(self, data) -> galois.FieldArray:
        if isinstance(data, list):
            return self.element(data)
        return self.element([int(data)])

    def label(self) -> str:
        return f"GF({self.p})" if self.k == 1 else f"GF({self.p}^{self.k})"


def field_make(p: int, k: int = 1) -> FieldSpec:
    """GF(p^k) with the lexicographically smallest monic irreducible modulus."""
    if not isinstance(p, (int, np.integer)) or p < 2 or not galois.is_prime(int(p)):
        raise InvalidParameterError(f"p must be prime, got {p}")
    if not isinstance(k, (int, np.integer)) or k < 1:
        raise InvalidParameterError(f"Extension degree must be >= 1, got {k}")
    p, k = int(p), int(k)
    if k == 1:
        modulus = (0, 1)
    else:
        poly = galois.irreducible_poly(p, k, method="min")
        modulus = tuple(int(c) for c in poly.coeffs[::-1])
    logger.debug("field_make(%d, %d): modulus %s", p, k, modulus)
    return FieldSpec(p, k, modulus)


def teichmuller(field: FieldSpec, u) -> galois.FieldArray:
    """omega(u): the residue of a p-adic unit (int or Fraction) in the prime field."""
    u = Fraction(u)
    if u.numerator % field.p == 0 or u.denominator % field.p == 0:
        raise InvalidParameterError(f"{u} is not a p-adic unit for p={field.p}")
    residue = u.numerator * pow(u.denominator, -1, field.p) % field.p
    return field(residue)


def frobenius(x: galois.FieldArray) -> galois.FieldArray:
    return x ** type(x).characteristic


def field_sqrt(field: FieldSpec, a) -> Optional[galois.FieldArray]:
    """Smallest (by integer representation) square root of a, or None."""
    a = field(a)
    elements = field.GF.elements
    roots = elements[elements ** 2 == a]
    if roots.size == 0:
        return None
    return roots[0]


def field_embed(small: FieldSpec, large: FieldSpec) -> Callable:
    """
    Ring embedding GF(p^k) -> GF(p^K) for k | K, sending x to the smallest
    root of the small modulus in the large field.
    """
    if small.p != large.p or large.k % small.k:
        raise InvalidParameterError(f"Cannot embed {small.label()} into {large.label()}")
    modulus = galois.Poly(large.GF([c % large.p for c in reversed(small.modulus)]))
    theta = large.GF(min(int(t) for t in modulus.roots()))

    def embed(x):
        result = large.GF(0)
        for c in reversed(small.coeffs(x)):
            result = result * theta + large(c)
        return result

    return embed


# -- matrices -----------------------------------------------------------------

def identity(field: FieldSpec, n: int) -> galois.FieldArray:
    return field.GF.Identity(n)


def zeros(field: FieldSpec, rows: int, cols: int) -> galois.FieldArray:
    return field.GF.Zeros((rows, cols))


def matrix_to_json(field: FieldSpec, M) -> list:
    return [[field.to_json(x) for x in row] for row in M]


def _pivots(R) -> list[int]:
    pivots = []
    for row in R:
        nonzero = np.flatnonzero(row)
        if nonzero.size:
            pivots.append(int(nonzero[0]))
    return pivots


def _reduce(M):
    if M.shape[0] == 0 or M.shape[1] == 0:
        return M, []
    R = M.row_reduce()
    return R, _pivots(R)


def mat_rank(M) -> int:
    return len(_reduce(M)[1])


def mat_kernel(M):
    """Columns form a basis of {v : M v = 0}."""
    GF = type(M)
    cols = M.shape[1]
    R, pivots = _reduce(M)
    free = [j for j in range(cols) if j not in pivots]
    K = GF.Zeros((cols, len(free)))
    for col, f in enumerate(free):
        K[f, col] = 1
        for i, pc in enumerate(pivots):
            K[pc, col] = -R[i, f]
    return K


def mat_image(M):
    """Columns of M at the pivot positions: a basis of the column space."""
    _, pivots = _reduce(M)
    return M[:, pivots]


@dataclass(frozen=True, eq=False)
class Cokernel:
    """
    coker(M) = target / im(M).  `projection @ M == 0`, `projection @ section`
    is the identity; rows of `projection` are coordinates on the quotient.
    """
    dim: int
    projection: galois.FieldArray
    section: galois.FieldArray

    def coordinates(self, v):
        return self.projection @ v


def mat_cokernel(M) -> Cokernel:
    GF = type(M)
    rows = M.shape[0]
    projection = mat_kernel(M.T).T
    dim = projection.shape[0]
    section = GF.Zeros((rows, dim))
    for j in range(dim):
        target = GF.Zeros(dim)
        target[j] = 1
        section[:, j] = solve_exact(projection, target)
    return Cokernel(dim, projection, section)


def mat_solve(M, b):
    """A particular solution of M x = b, or None when the system is inconsistent."""
    if M.ndim != 2 or b.ndim != 1 or M.shape[0] != b.shape[0]:
        raise InvalidParameterError(f"Dimension mismatch: {M.shape} vs {b.shape}")
    GF = type(M)
    rows, cols = M.shape
    augmented = GF.Zeros((rows, cols + 1))
    augmented[:, :cols] = M
    augmented[:, cols] = b
    R, pivots = _reduce(augmented)
    if cols in pivots:
        return None
    x = GF.Zeros(cols)
    for i, pc in enumerate(pivots):
        x[pc] = R[i, cols]
    return x


def solve_exact(M, b):
    x = mat_solve(M, b)
    if x is None:
        raise InconsistentSystemError("Linear system has no solution")
    return x


def solve_columns(M, B):
    """X with M X = B, column by column."""
    GF = type(M)
    X = GF.Zeros((M.shape[1], B.shape[1]))
    for j in range(B.shape[1]):
        X[:, j] = solve_exact(M, B[:, j])
    return X


def mat_power(M, n: int):
    if n < 0:
        return mat_power(np.linalg.inv(M), -n)
    result = type(M).Identity(M.shape[0])
    base = M
    while n:
        if n & 1:
            result = result @ base
        base = base @ base
        n >>= 1
    return result


def is_zero(M) -> bool:
    return bool(np.count_nonzero(M) == 0)
