"""
Exact GL2(Q_p) arithmetic on rational matrices, Iwasawa decomposition and
canonical representatives for G/ZK, B/K_B and U/K_U.

Entries are `Fraction`s: Q is dense in Q_p and closed under the inversions
needed for units like diag(2, 1).  Canonical coset data lives in Z[1/p].
"""
import logging
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

from src.utils import InvalidParameterError

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]


def valuation(x: Scalar, p: int) -> int:
    x = Fraction(x)
    if x == 0:
        raise InvalidParameterError("valuation of 0 is undefined")
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def unit_part(x: Scalar, p: int) -> Fraction:
    x = Fraction(x)
    return x / Fraction(p) ** valuation(x, p)


def residue_mod(x: Scalar, p: int, a: int) -> Fraction:
    """
    The representative sum_{i<a} c_i p^i (0 <= c_i < p, finitely many) of
    x mod p^a Z_p.
    """
    x = Fraction(x)
    if x == 0:
        return Fraction(0)
    v = valuation(x, p)
    if v >= a:
        return Fraction(0)
    modulus = p ** (a - v)
    w = x / Fraction(p) ** v
    digits = w.numerator * pow(w.denominator, -1, modulus) % modulus
    return Fraction(digits) * Fraction(p) ** v


@dataclass(frozen=True)
class PScalar:
    """num * p^pexp with p not dividing num; zero is (0, 0)."""
    num: int
    pexp: int
    p: int

    @classmethod
    def from_value(cls, x: Scalar, p: int) -> "PScalar":
        x = Fraction(x)
        if x == 0:
            return cls(0, 0, p)
        v = valuation(x, p)
        unit = x / Fraction(p) ** v
        if unit.denominator != 1:
            raise InvalidParameterError(f"{x} is not in Z[1/{p}]")
        return cls(unit.numerator, v, p)

    @property
    def value(self) -> Fraction:
        return Fraction(self.num) * Fraction(self.p) ** self.pexp

    def to_json(self) -> dict:
        return {"num": str(self.num), "pexp": self.pexp}

    @classmethod
    def from_json(cls, data: dict, p: int) -> "PScalar":
        return cls.from_value(Fraction(data["num"]) * Fraction(p) ** int(data["pexp"]), p)


def scalar_to_json(x: Scalar, p: int) -> dict:
    """
    {"num": unit, "pexp": v} with x = unit * p^v.  The unit is an integer
    string for entries of Z[1/p]; entries with a Z_p-unit denominator are
    written as "a/b" with p dividing neither a nor b.
    """
    x = Fraction(x)
    if x == 0:
        return {"num": "0", "pexp": 0}
    v = valuation(x, p)
    unit = x / Fraction(p) ** v
    return {"num": str(unit), "pexp": v}


def scalar_from_json(data: dict, p: int) -> Fraction:
    unit = Fraction(data["num"])
    if unit != 0 and (unit.numerator % p == 0 or unit.denominator % p == 0):
        raise InvalidParameterError(f"num {data['num']} is not a {p}-adic unit")
    return unit * Fraction(p) ** int(data["pexp"])


@dataclass(frozen=True)
class GMatrix:
    """[[a, b], [c, d]] in GL2(Q_p) with rational entries."""
    p: int
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.det == 0:
            raise InvalidParameterError(f"Singular matrix {self.rows()}")

    @classmethod
    def of(cls, p: int, rows) -> "GMatrix":
        (a, b), (c, d) = rows
        return cls(p, a, b, c, d)

    @classmethod
    def identity(cls, p: int) -> "GMatrix":
        return cls(p, 1, 0, 0, 1)

    @classmethod
    def diag(cls, p: int, x: Scalar, y: Scalar) -> "GMatrix":
        return cls(p, x, 0, 0, y)

    @classmethod
    def scalar(cls, p: int, z: Scalar) -> "GMatrix":
        return cls(p, z, 0, 0, z)

    @classmethod
    def unipotent(cls, p: int, u: Scalar) -> "GMatrix":
        return cls(p, 1, u, 0, 1)

    @property
    def det(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    def rows(self):
        return ((self.a, self.b), (self.c, self.d))

    def __matmul__(self, other: "GMatrix") -> "GMatrix":
        return GMatrix(
            self.p,
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "GMatrix":
        det = self.det
        return GMatrix(self.p, self.d / det, -self.b / det, -self.c / det, self.a / det)

    def scaled(self, z: Scalar) -> "GMatrix":
        z = Fraction(z)
        return GMatrix(self.p, self.a * z, self.b * z, self.c * z, self.d * z)

    def is_upper_triangular(self) -> bool:
        return self.c == 0

    def is_diagonal(self) -> bool:
        return self.b == 0 and self.c == 0

    def to_json(self) -> list:
        return [[scalar_to_json(x, self.p) for x in row] for row in self.rows()]

    @classmethod
    def from_json(cls, data, p: int) -> "GMatrix":
        return cls.of(p, [[scalar_from_json(x, p) for x in row] for row in data])

    def __repr__(self):
        return f"GMatrix(p={self.p}, [[{self.a}, {self.b}], [{self.c}, {self.d}]])"


def is_integral(x: Scalar, p: int) -> bool:
    return x == 0 or valuation(x, p) >= 0


def in_k(g: GMatrix) -> bool:
    """g in GL2(Z_p)."""
    return all(is_integral(x, g.p) for x in (g.a, g.b, g.c, g.d)) and valuation(g.det, g.p) == 0


def in_zk(g: GMatrix) -> bool:
    v = valuation(g.det, g.p)
    if v % 2:
        return False
    return in_k(g.scaled(Fraction(g.p) ** (-(v // 2))))


def central_exponent(g: GMatrix) -> int:
    """s with g in p^s GL2(Z_p); requires g in ZK."""
    if not in_zk(g):
        raise InvalidParameterError(f"{g} is not in Q_p^x GL2(Z_p)")
    return valuation(g.det, g.p) // 2


def iwasawa(g: GMatrix) -> tuple[GMatrix, GMatrix]:
    """g = b @ kappa with b upper triangular and kappa in GL2(Z_p)."""
    p = g.p
    if g.c == 0:
        return g, GMatrix.identity(p)
    if g.d != 0 and valuation(g.d, p) <= valuation(g.c, p):
        t = g.c / g.d
        kappa = GMatrix(p, 1, 0, t, 1)
        b = GMatrix(p, g.a - g.b * t, g.b, 0, g.d)
    else:
        t = g.d / g.c
        kappa = GMatrix(p, 0, 1, 1, t)
        b = GMatrix(p, g.b - g.a * t, g.a, 0, g.c)
    return b, kappa


@dataclass(frozen=True)
class VertexCoset:
    """The coset [[p^a, u], [0, 1]] ZK, u reduced mod p^a Z_p."""
    a: int
    u: PScalar

    @property
    def p(self) -> int:
        return self.u.p

    def matrix(self) -> GMatrix:
        return GMatrix(self.p, Fraction(self.p) ** self.a, self.u.value, 0, 1)

    def to_json(self) -> dict:
        return {"a": self.a, "u": self.u.to_json()}

    @classmethod
    def origin(cls, p: int) -> "VertexCoset":
        return cls(0, PScalar(0, 0, p))


def canonical_vertex(g: GMatrix) -> tuple[VertexCoset, GMatrix]:
    """(v, h) with g = rep(v) @ h and h in ZK."""
    p = g.p
    b, _ = iwasawa(g)
    x = b.a / b.d
    y = b.b / b.d
    a = valuation(x, p)
    vertex = VertexCoset(a, PScalar.from_value(residue_mod(y, p, a), p))
    h = vertex.matrix().inverse() @ g
    return vertex, h


def tree_distance(vertex: VertexCoset) -> int:
    """Distance from the vertex ZK in the Bruhat-Tits tree."""
    e = min(vertex.a, 0)
    if vertex.u.num:
        e = min(e, vertex.u.pexp)
    return vertex.a - 2 * e


def neighbors(vertex: VertexCoset) -> list[VertexCoset]:
    p = vertex.p
    g = vertex.matrix()
    steps = [GMatrix(p, p, i, 0, 1) for i in range(p)] + [GMatrix.diag(p, 1, p)]
    return [canonical_vertex(g @ step)[0] for step in steps]


def tree_ball(p: int, radius: int) -> list[VertexCoset]:
    """Vertices at distance <= radius from the origin, breadth first."""
    origin = VertexCoset.origin(p)
    seen = {origin: 0}
    queue = deque([origin])
    while queue:
        vertex = queue.popleft()
        if seen[vertex] == radius:
            continue
        for nxt in neighbors(vertex):
            if nxt not in seen:
                seen[nxt] = seen[vertex] + 1
                queue.append(nxt)
    return list(seen)


@dataclass(frozen=True)
class UCoset:
    """The class of [[1, u], [0, 1]] in U/K_U; u has only negative p-powers."""
    u: PScalar

    @property
    def p(self) -> int:
        return self.u.p

    def matrix(self) -> GMatrix:
        return GMatrix.unipotent(self.p, self.u.value)

    def depth(self) -> int:
        return -self.u.pexp if self.u.num else 0


def enumerate_ucosets(p: int, depth: int) -> list[UCoset]:
    """The p^depth classes of p^-depth Z_p / Z_p."""
    if depth < 0:
        raise InvalidParameterError(f"depth must be >= 0, got {depth}")
    scale = p ** depth
    return [UCoset(PScalar.from_value(Fraction(j, scale), p)) for j in range(scale)]


def iter_ucoset_shell(p: int, depth: int) -> Iterator[UCoset]:
    """Classes of valuation exactly -depth (the trivial class for depth 0)."""
    for coset in enumerate_ucosets(p, depth):
        if coset.depth() == depth:
            yield coset


@dataclass(frozen=True)
class BorelCoset:
    """The coset [[p^a, u], [0, p^b]] K_B in B/K_B, u reduced mod p^a Z_p."""
    a: int
    b: int
    u: PScalar

    @property
    def p(self) -> int:
        return self.u.p

    def matrix(self) -> GMatrix:
        p = self.p
        return GMatrix(p, Fraction(p) ** self.a, self.u.value, 0, Fraction(p) ** self.b)

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "u": self.u.to_json()}


def borel_coset(g: GMatrix) -> tuple[BorelCoset, GMatrix]:
    """(c, h) with g = rep(c) @ h, h integral upper triangular with unit diagonal."""
    if not g.is_upper_triangular():
        raise InvalidParameterError(f"{g} is not upper triangular")
    p = g.p
    a, b = valuation(g.a, p), valuation(g.d, p)
    y = g.b / unit_part(g.d, p)
    coset = BorelCoset(a, b, PScalar.from_value(residue_mod(y, p, a), p))
    h = coset.matrix().inverse() @ g
    return coset, h
