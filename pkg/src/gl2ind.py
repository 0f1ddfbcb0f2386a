"""
ind_{ZK}^G(W) as finitely supported formal sums of symbols [g, w], keyed by
the canonical vertex of g, and the Barthel-Livne operator Phi generating its
endomorphism algebra k[Phi].
"""
import functools
import logging
import random
from typing import Mapping, Optional

import galois
import numpy as np

from src.padic import GMatrix, VertexCoset, canonical_vertex, tree_ball, tree_distance
from src.weights import Weight, action_matrix, projection_X_matrix, projection_Y_matrix
from src.utils import InvalidParameterError

logger = logging.getLogger(__name__)

HeckePoly = galois.Poly


class IndElement:
    """sum [rep(v), w_v]; zero vectors are never stored."""

    def __init__(self, weight: Weight, terms: Optional[Mapping[VertexCoset, galois.FieldArray]] = None):
        self.weight = weight
        self.terms: dict[VertexCoset, galois.FieldArray] = {}
        for vertex, vector in (terms or {}).items():
            self._accumulate(vertex, vector)

    def _accumulate(self, vertex: VertexCoset, vector) -> None:
        if vertex in self.terms:
            vector = self.terms[vertex] + vector
        if np.count_nonzero(vector):
            self.terms[vertex] = vector
        else:
            self.terms.pop(vertex, None)

    @classmethod
    def zero(cls, weight: Weight) -> "IndElement":
        return cls(weight)

    @classmethod
    def from_term(cls, weight: Weight, g: GMatrix, vector) -> "IndElement":
        """[g, w] rewritten as [rep(v), h w] with g = rep(v) h."""
        vertex, h = canonical_vertex(g)
        return cls(weight, {vertex: action_matrix(weight, h) @ vector})

    @classmethod
    def basis(cls, weight: Weight, vector) -> "IndElement":
        """[1, w]."""
        return cls(weight, {VertexCoset.origin(weight.p): vector})

    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> list[VertexCoset]:
        return list(self.terms)

    def support_radius(self) -> int:
        return max((tree_distance(v) for v in self.terms), default=0)

    def __add__(self, other: "IndElement") -> "IndElement":
        result = IndElement(self.weight, self.terms)
        for vertex, vector in other.terms.items():
            result._accumulate(vertex, vector)
        return result

    def __neg__(self) -> "IndElement":
        return IndElement(self.weight, {v: -w for v, w in self.terms.items()})

    def __sub__(self, other: "IndElement") -> "IndElement":
        return self + (-other)

    def scale(self, c) -> "IndElement":
        c = self.weight.field(c)
        return IndElement(self.weight, {v: w * c for v, w in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, IndElement):
            return NotImplemented
        if self.weight != other.weight or self.terms.keys() != other.terms.keys():
            return False
        return all(np.array_equal(w, other.terms[v]) for v, w in self.terms.items())

    def __len__(self):
        return len(self.terms)

    def to_json(self) -> list:
        field = self.weight.field
        terms = sorted(self.terms.items(), key=lambda item: (item[0].a, item[0].u.pexp, item[0].u.num))
        return [{"vertex": v.to_json(), "coeffs": [field.to_json(c) for c in w]} for v, w in terms]

    def __repr__(self):
        return f"IndElement({self.weight.label()}, {len(self.terms)} terms)"


def act_g(g: GMatrix, f: IndElement) -> IndElement:
    result = IndElement(f.weight)
    for vertex, vector in f.terms.items():
        target, h = canonical_vertex(g @ vertex.matrix())
        result._accumulate(target, action_matrix(f.weight, h) @ vector)
    return result


def evaluate(f: IndElement, t: GMatrix) -> galois.FieldArray:
    """f(t): only the term at the vertex of t^-1 contributes."""
    vertex, h = canonical_vertex(t.inverse())
    vector = f.terms.get(vertex)
    if vector is None:
        return f.weight.field.GF.Zeros(f.weight.dim)
    return action_matrix(f.weight, h.inverse()) @ vector


@functools.lru_cache(maxsize=None)
def _phi_kernel(weight: Weight) -> tuple:
    """Phi([1, w]) = sum_k [rep(v_k), A_k w], as pairs (rep(v_k), A_k)."""
    p = weight.p
    kernel = []
    steps = [(GMatrix.diag(p, p, 1).inverse(), projection_Y_matrix(weight))]
    for i in range(p):
        u_i = action_matrix(weight, GMatrix.unipotent(p, i))
        steps.append((GMatrix(p, 1, i, 0, p).inverse(), projection_X_matrix(weight) @ u_i))
    for g, A in steps:
        vertex, h = canonical_vertex(g)
        kernel.append((vertex.matrix(), action_matrix(weight, h) @ A))
    return tuple(kernel)


def phi(f: IndElement) -> IndElement:
    """The G-equivariant extension of the Barthel-Livne operator."""
    result = IndElement(f.weight)
    kernel = _phi_kernel(f.weight)
    for vertex, vector in f.terms.items():
        rep = vertex.matrix()
        for g, A in kernel:
            image = A @ vector
            if np.count_nonzero(image):
                target, h = canonical_vertex(rep @ g)
                result._accumulate(target, action_matrix(f.weight, h) @ image)
    return result


def hecke_poly(weight: Weight, coefficients: Mapping[int, object]) -> HeckePoly:
    """sum c_n Phi^n from {n: c_n} (integers read in the prime field)."""
    if not coefficients:
        return galois.Poly.Zero(field=weight.field.GF)
    if min(coefficients) < 0:
        raise InvalidParameterError("Hecke polynomials have non-negative degrees")
    degree = max(coefficients)
    ascending = [weight.field(coefficients.get(n, 0)) for n in range(degree + 1)]
    return galois.Poly(weight.field.GF([int(c) for c in reversed(ascending)]))


def phi_power(weight: Weight, n: int) -> HeckePoly:
    return hecke_poly(weight, {n: 1})


def phi_minus(weight: Weight, lam) -> HeckePoly:
    """Phi - lambda."""
    return hecke_poly(weight, {1: 1, 0: -weight.field(lam)})


def phi_poly(q: HeckePoly, f: IndElement) -> IndElement:
    """q(Phi) f by Horner's rule."""
    result = IndElement(f.weight)
    for c in q.coeffs:
        result = phi(result) + f.scale(c)
    return result


def random_element(weight: Weight, radius: int, rng: random.Random, n_terms: int = 3) -> IndElement:
    """A random element supported on the tree ball of the given radius."""
    ball = tree_ball(weight.p, radius)
    order = weight.field.order
    result = IndElement(weight)
    for _ in range(n_terms):
        vertex = rng.choice(ball)
        vector = weight.field.GF([rng.randrange(order) for _ in range(weight.dim)])
        result._accumulate(vertex, vector)
    return result
