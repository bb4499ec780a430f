"""Brauer classes of a K3 as finite-order functionals ``T -> Q/Z``.

A class is attached to an explicit sublattice ``T`` (normally the
transcendental lattice) and stores its values on the basis of ``T`` as
reduced fractions in ``[0, 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .errors import InvalidInputError
from .intmat import IntMatrix, hermite_rows, integer_kernel
from .lattice import K3_RANK, Sublattice
from .mukai import K3Surface

__all__ = [
    "BrauerClass",
    "ModNClass",
    "transcendental_of",
    "zero_class",
    "brauer_from_h2_class",
    "order",
    "kernel",
    "restrict",
    "obstruction_from_bundle",
    "topological_twisting_class",
    "p_map",
    "kummer_torsion_order",
]


def _mod1(x) -> Fraction:
    x = Fraction(x)
    return x - (x.numerator // x.denominator)


@dataclass(frozen=True, eq=False)
class BrauerClass:
    """Homomorphism ``lattice -> Q/Z`` given by its values on the basis."""

    lattice: Sublattice
    values: tuple[Fraction, ...]

    def __post_init__(self):
        vals = tuple(_mod1(v) for v in self.values)
        if len(vals) != self.lattice.rank:
            raise InvalidInputError(
                f"{len(vals)} values for a rank {self.lattice.rank} lattice"
            )
        object.__setattr__(self, "values", vals)

    def _same_lattice(self, other: "BrauerClass") -> bool:
        T, S = self.lattice, other.lattice
        return T is S or (T.ambient == S.ambient and T.basis == S.basis)

    def _check(self, other):
        if not self._same_lattice(other):
            raise InvalidInputError("Brauer classes live on different lattices")

    def __eq__(self, other):
        if not isinstance(other, BrauerClass):
            return NotImplemented
        return self._same_lattice(other) and self.values == other.values

    def __hash__(self):
        return hash((self.lattice.basis, self.values))

    def __add__(self, other):
        self._check(other)
        return BrauerClass(self.lattice, tuple(a + b for a, b in zip(self.values, other.values)))

    def __neg__(self):
        return BrauerClass(self.lattice, tuple(-a for a in self.values))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k: int):
        return BrauerClass(self.lattice, tuple(k * a for a in self.values))

    __rmul__ = __mul__

    def __call__(self, t_coords: Sequence[int]) -> Fraction:
        """Value on a vector given in coordinates of the attached lattice."""
        return _mod1(sum(c * v for c, v in zip(t_coords, self.values)))

    def evaluate(self, x: Sequence[int]) -> Fraction:
        """Value on an ambient vector lying in the attached lattice."""
        c = self.lattice.coordinates(x)
        if c is None:
            raise InvalidInputError("vector is not in the lattice of this class")
        return self(c)

    @property
    def is_zero(self) -> bool:
        return not any(self.values)

    @property
    def order(self) -> int:
        return order(self)

    def __repr__(self):
        vals = ", ".join(str(v) for v in self.values if v)
        return f"BrauerClass(order {self.order}; nonzero values [{vals}])"


@dataclass(frozen=True)
class ModNClass:
    """Element of ``H^2(X, Z/n)`` as residues of the 22 coordinates."""

    n: int
    coords: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise InvalidInputError("modulus must be positive")
        object.__setattr__(self, "coords", tuple(int(c) % self.n for c in self.coords))

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)


def transcendental_of(X) -> Sublattice:
    """Accept a :class:`K3Surface` or an explicit lattice ``T``."""
    if isinstance(X, K3Surface):
        return X.transcendental
    if isinstance(X, Sublattice):
        return X
    raise TypeError(f"expected a K3Surface or Sublattice, got {type(X).__name__}")


def zero_class(T: Sublattice) -> BrauerClass:
    return BrauerClass(T, (0,) * T.rank)


def brauer_from_h2_class(X, w: Sequence) -> BrauerClass:
    """``[w]``: the functional ``t -> (w . t) mod Z`` on ``T``."""
    T = transcendental_of(X)
    w = tuple(Fraction(x) for x in w)
    if len(w) != T.ambient.rank:
        raise InvalidInputError("class has the wrong number of coordinates")
    Gw = T.ambient.gram @ w
    return BrauerClass(T, tuple(sum(a * b for a, b in zip(t, Gw)) for t in T.vectors))


def order(alpha: BrauerClass) -> int:
    """Least ``m >= 1`` with ``m alpha = 0``."""
    return lcm(1, *(v.denominator for v in alpha.values))


def kernel(alpha: BrauerClass) -> Sublattice:
    """``{t in T : alpha(t) = 0}``, a sublattice of index ``order(alpha)``."""
    T = alpha.lattice
    m = order(alpha)
    if m == 1:
        return Sublattice(T.ambient, T.basis)
    row = IntMatrix([[*(int(v * m) for v in alpha.values), m]])
    coords = [c[: T.rank] for c in integer_kernel(row).columns()]
    gens = [T.to_ambient(c) for c in coords]
    basis = IntMatrix.from_columns(hermite_rows(gens, T.ambient.rank), nrows=T.ambient.rank)
    return Sublattice(T.ambient, basis)


def restrict(alpha: BrauerClass, K: Sublattice) -> BrauerClass:
    """Compose ``alpha`` with the inclusion ``K -> T``."""
    T = alpha.lattice
    if K.ambient != T.ambient:
        raise InvalidInputError("sublattice lives in a different ambient lattice")
    vals = []
    for k in K.vectors:
        c = T.coordinates(k)
        if c is None:
            raise InvalidInputError("restriction target is not contained in the lattice")
        vals.append(alpha(c))
    return BrauerClass(K, tuple(vals))


def obstruction_from_bundle(X, c1: Sequence[int], r: int) -> BrauerClass:
    """``[-c1 / r]``: the twist forced on a rank ``r`` bundle whose ``c1`` stops being algebraic."""
    if r < 1:
        raise InvalidInputError("rank must be positive")
    return brauer_from_h2_class(X, [Fraction(-c, r) for c in c1])


def topological_twisting_class(c1: Sequence[int], n: int) -> ModNClass:
    """``-c1 mod n`` for the projectivization of a rank ``n`` bundle."""
    return ModNClass(n, tuple(-c for c in c1))


def p_map(X, t: ModNClass) -> BrauerClass:
    """``H^2(Z/n) -> Br``: lift residues to ``[0, n)`` and take ``[x / n]``."""
    return brauer_from_h2_class(X, [Fraction(c, t.n) for c in t.coords])


def kummer_torsion_order(rho: int, n: int) -> int:
    """Order of the ``n``-torsion of ``Br(X)`` for a K3 of Picard rank ``rho``.

    ``|H^2(X, Z/n)| / |Pic(X) (x) Z/n| = n^22 / n^rho``.
    """
    if not 1 <= rho <= 20:
        raise InvalidInputError("Picard rank of a projective K3 is between 1 and 20")
    if n < 1:
        raise InvalidInputError("modulus must be positive")
    return n ** (K3_RANK - rho)
