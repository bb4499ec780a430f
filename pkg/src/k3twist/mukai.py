"""Mukai lattice, Mukai vectors and K3 surfaces given by their Neron-Severi lattice.

Mukai vectors are written ``(r, l, s)`` with ``r`` the H^0 coefficient, ``l``
the 22 H^2 coordinates in the fixed K3 basis and ``s`` the multiple of the
point class. As vectors of the rank-24 Mukai lattice the coordinate order is
``(r, l_0, ..., l_21, s)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache, reduce
from math import gcd
from typing import NamedTuple, Sequence

from .errors import InvalidInputError, SaturationError
from .intmat import IntMatrix
from .lattice import (
    K3_RANK,
    U1_E,
    U1_F,
    Lattice,
    LatticeEmbedding,
    LatticeVector,
    Sublattice,
    orthogonal_complement,
    signature,
    k3_lattice as _k3_lattice,
)

__all__ = [
    "MUKAI_RANK",
    "k3",
    "mukai_lattice",
    "MukaiVector",
    "RationalMukaiVector",
    "K3Surface",
    "Admissibility",
    "mukai_pairing",
    "mukai_vector_of_sheaf",
    "euler_pairing",
    "k3_ring_multiply",
    "ring_sqrt",
    "TODD_K3",
    "SQRT_TODD_K3",
    "twisted_chern_change",
    "twisted_slope",
    "is_admissible_mukai_vector",
]

MUKAI_RANK = K3_RANK + 2


@lru_cache(maxsize=None)
def k3() -> Lattice:
    """The fixed K3 lattice (shared instance)."""
    return _k3_lattice()


@lru_cache(maxsize=None)
def mukai_lattice() -> Lattice:
    """Rank 24: the K3 lattice on ``l`` and ``[[0, -1], [-1, 0]]`` on ``(r, s)``."""
    g = [[0] * MUKAI_RANK for _ in range(MUKAI_RANK)]
    for i, row in enumerate(k3().gram.rows):
        g[i + 1][1 : K3_RANK + 1] = row
    g[0][MUKAI_RANK - 1] = g[MUKAI_RANK - 1][0] = -1
    return Lattice(IntMatrix(g), name="Mukai")


def _h2(l: Sequence) -> tuple:
    l = tuple(l)
    if len(l) != K3_RANK:
        raise InvalidInputError(f"H^2 part must have {K3_RANK} coordinates, got {len(l)}")
    return l


def _h2_form(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, k3().gram @ b) if x)


@dataclass(frozen=True)
class MukaiVector:
    """Integral Mukai vector ``(r, l, s)``."""

    r: int
    l: tuple[int, ...]
    s: int

    def __post_init__(self):
        object.__setattr__(self, "r", int(self.r))
        object.__setattr__(self, "s", int(self.s))
        object.__setattr__(self, "l", tuple(int(x) for x in _h2(self.l)))

    @classmethod
    def from_coords(cls, coords: Sequence[int]) -> "MukaiVector":
        coords = tuple(coords)
        if len(coords) != MUKAI_RANK:
            raise InvalidInputError(f"Mukai vector needs {MUKAI_RANK} coordinates")
        return cls(coords[0], coords[1:-1], coords[-1])

    @classmethod
    def zero(cls) -> "MukaiVector":
        return cls(0, (0,) * K3_RANK, 0)

    @property
    def coords(self) -> tuple[int, ...]:
        return (self.r, *self.l, self.s)

    def as_lattice_vector(self) -> LatticeVector:
        return LatticeVector(mukai_lattice(), self.coords)

    def to_rational(self) -> "RationalMukaiVector":
        return RationalMukaiVector(self.r, self.l, self.s)

    @property
    def content(self) -> int:
        return reduce(gcd, self.coords, 0)

    def __add__(self, other):
        return MukaiVector.from_coords(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other):
        return MukaiVector.from_coords(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self):
        return MukaiVector.from_coords(-a for a in self.coords)

    def __mul__(self, k: int):
        return MukaiVector.from_coords(k * a for a in self.coords)

    __rmul__ = __mul__


@dataclass(frozen=True)
class RationalMukaiVector:
    """Element of the rational cohomology ring ``H^0 + H^2 + H^4`` of a K3."""

    r: Fraction
    l: tuple[Fraction, ...]
    s: Fraction

    def __post_init__(self):
        object.__setattr__(self, "r", Fraction(self.r))
        object.__setattr__(self, "s", Fraction(self.s))
        object.__setattr__(self, "l", tuple(Fraction(x) for x in _h2(self.l)))

    @classmethod
    def unit(cls) -> "RationalMukaiVector":
        return cls(1, (0,) * K3_RANK, 0)

    @property
    def coords(self) -> tuple[Fraction, ...]:
        return (self.r, *self.l, self.s)

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self.coords)

    def to_integral(self) -> MukaiVector:
        if not self.is_integral():
            raise InvalidInputError("rational Mukai vector has non-integral entries")
        return MukaiVector(int(self.r), tuple(int(x) for x in self.l), int(self.s))

    def __add__(self, other):
        return RationalMukaiVector(
            self.r + other.r, tuple(a + b for a, b in zip(self.l, other.l)), self.s + other.s
        )

    def __sub__(self, other):
        return self + other * -1

    def __mul__(self, k):
        k = Fraction(k)
        return RationalMukaiVector(k * self.r, tuple(k * x for x in self.l), k * self.s)

    __rmul__ = __mul__

    def __truediv__(self, k):
        return self * (1 / Fraction(k))


def _rational(x) -> RationalMukaiVector:
    if isinstance(x, RationalMukaiVector):
        return x
    if isinstance(x, MukaiVector):
        return x.to_rational()
    raise TypeError(f"expected a Mukai vector, got {type(x).__name__}")


def mukai_pairing(a, b):
    """``(l.l') - r s' - r' s``. Integral inputs give an ``int``."""
    if not (isinstance(a, MukaiVector) and isinstance(b, MukaiVector)):
        a, b = _rational(a), _rational(b)
    return _h2_form(a.l, b.l) - a.r * b.s - b.r * a.s


def euler_pairing(a, b):
    """``chi(E, F) = -(v(E) . v(F))``."""
    return -mukai_pairing(a, b)


def mukai_vector_of_sheaf(r: int, c1: Sequence[int], c2: int) -> MukaiVector:
    """``(r, c1, r + c1^2/2 - c2)``: ``ch . sqrt(td)`` on a K3.

    ``c1^2`` is always even because the K3 lattice is even.
    """
    c1 = tuple(int(x) for x in _h2(c1))
    sq = _h2_form(c1, c1)
    return MukaiVector(r, c1, r + sq // 2 - c2)


def k3_ring_multiply(a, b) -> RationalMukaiVector:
    """Cup product in the cohomology ring of a K3 (degrees above 4 vanish)."""
    a, b = _rational(a), _rational(b)
    return RationalMukaiVector(
        a.r * b.r,
        tuple(a.r * y + b.r * x for x, y in zip(a.l, b.l)),
        a.r * b.s + b.r * a.s + _h2_form(a.l, b.l),
    )


def ring_sqrt(a) -> RationalMukaiVector:
    """Square root with leading term 1 of an element with ``r = 1``."""
    a = _rational(a)
    if a.r != 1:
        raise InvalidInputError("ring_sqrt needs H^0 component equal to 1")
    half = tuple(x / 2 for x in a.l)
    return RationalMukaiVector(1, half, (a.s - _h2_form(half, half)) / 2)


TODD_K3 = RationalMukaiVector(1, (0,) * K3_RANK, 2)
SQRT_TODD_K3 = RationalMukaiVector(1, (0,) * K3_RANK, 1)


def twisted_chern_change(chE, chG) -> RationalMukaiVector:
    """Change of the reference bundle: ``ch_E(F) . ch(G) / rk(G)``."""
    chG = _rational(chG)
    if chG.r == 0:
        raise InvalidInputError("reference change needs a sheaf of nonzero rank")
    return k3_ring_multiply(chE, chG) / chG.r


def twisted_slope(chEF, H: Sequence) -> Fraction:
    """``(c1 . H) / rk`` for a twisted Chern character on a surface."""
    chEF = _rational(chEF)
    if chEF.r <= 0:
        raise InvalidInputError("slope needs positive rank")
    H = tuple(Fraction(x) for x in _h2(H))
    return _h2_form(chEF.l, H) / chEF.r


@dataclass(frozen=True, eq=False)
class K3Surface:
    """A K3 surface, seen through the primitive embedding ``NS(X) -> H^2``."""

    ns_embedding: LatticeEmbedding
    label: str = ""

    def __post_init__(self):
        emb = self.ns_embedding
        if emb.target != k3():
            raise InvalidInputError("Neron-Severi lattice must embed into the K3 lattice")
        if not self.ns.is_saturated():
            raise SaturationError("Neron-Severi embedding is not primitive")
        rho = self.picard_rank
        if not 1 <= rho <= 20:
            raise InvalidInputError(f"Picard rank {rho} outside 1..20")
        emb.source.require_nondegenerate()
        if signature(emb.source) != (1, rho - 1):
            raise InvalidInputError(
                f"Neron-Severi signature {signature(emb.source)} is not (1, {rho - 1})"
            )

    @classmethod
    def rank_one(cls, degree: int, label: str = "") -> "K3Surface":
        """Picard rank one with ``h^2 = degree``; ``h = e + (degree/2) f`` in the first U."""
        if degree <= 0 or degree % 2:
            raise InvalidInputError("polarization degree must be positive and even")
        h = [0] * K3_RANK
        h[U1_E] = 1
        h[U1_F] = degree // 2
        source = Lattice(IntMatrix([[degree]]), name=f"<{degree}>")
        emb = LatticeEmbedding(source, k3(), IntMatrix.from_columns([h]))
        return cls(emb, label or f"<{degree}>")

    @classmethod
    def from_embedding(cls, ns_gram, embedding, label: str = "") -> "K3Surface":
        emb = LatticeEmbedding(Lattice(IntMatrix(ns_gram)), k3(), IntMatrix(embedding))
        return cls(emb, label)

    @property
    def picard_rank(self) -> int:
        return self.ns_embedding.source.rank

    @cached_property
    def ns(self) -> Sublattice:
        return Sublattice(k3(), self.ns_embedding.matrix)

    @cached_property
    def transcendental(self) -> Sublattice:
        T = orthogonal_complement(self.ns)
        rho = self.picard_rank
        if signature(T.lattice) != (2, 20 - rho):
            raise InvalidInputError("transcendental lattice has the wrong signature")
        return T

    @cached_property
    def algebraic_sublattice(self) -> Sublattice:
        """Span of ``(1,0,0)``, ``(0,NS,0)`` and ``(0,0,1)`` in the Mukai lattice."""
        cols = [(1,) + (0,) * (MUKAI_RANK - 1)]
        cols += [(0, *c, 0) for c in self.ns.vectors]
        cols.append((0,) * (MUKAI_RANK - 1) + (1,))
        return Sublattice(mukai_lattice(), IntMatrix.from_columns(cols))

    def is_algebraic_h2(self, l: Sequence[int]) -> bool:
        return self.ns.contains(tuple(l))

    def __repr__(self):
        return f"K3Surface({self.label or f'rho={self.picard_rank}'})"


class Admissibility(NamedTuple):
    algebraic: bool
    primitive: bool
    isotropic: bool

    def failed(self) -> list[str]:
        return [name for name, ok in zip(self._fields, self) if not ok]


def is_admissible_mukai_vector(X: K3Surface, v: MukaiVector) -> Admissibility:
    """Hypotheses for a two-dimensional moduli space: algebraic, primitive, isotropic."""
    return Admissibility(
        algebraic=X.is_algebraic_h2(v.l),
        primitive=v.content == 1,
        isotropic=mukai_pairing(v, v) == 0,
    )
