"""Cech cochains on a finite nerve with ``Z/n`` or ``Q/Z`` coefficients.

Rank-one twisted gluing data abelianizes to a 1-cochain ``lambda`` of
transition values and a 2-cochain ``alpha`` of twists; the gluing condition
``lambda_ij + lambda_jk + lambda_ki = alpha_ijk`` is ``delta(lambda) = alpha``.
Modulus ``0`` stands for ``Q/Z`` (values are reduced fractions in ``[0, 1)``).
Only rank-one data is modelled.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

from .errors import InvalidInputError, InvariantViolation
from .intmat import IntegerSolver, IntMatrix, smith_decomposition
from .lattice import FiniteAbelianGroup

__all__ = [
    "Nerve",
    "Cochain",
    "GluingData",
    "CohomologyTest",
    "coboundary",
    "coboundary_matrix",
    "cech_cohomology",
    "is_cohomologous",
    "verify_gluing",
    "tensor_gluing",
    "hom_gluing",
    "inverse_gluing",
]

MAX_DIM = 3


@dataclass(frozen=True)
class Nerve:
    """Simplicial complex on vertices ``0..vertex_count-1`` (dimensions 0 to 3)."""

    vertex_count: int
    simplices: tuple[tuple[tuple[int, ...], ...], ...]

    def __post_init__(self):
        dims = [tuple(sorted(tuple(sorted(s)) for s in layer)) for layer in self.simplices]
        dims += [()] * (MAX_DIM + 1 - len(dims))
        if len(dims) > MAX_DIM + 1:
            raise InvalidInputError("nerves are truncated at dimension 3")
        for k, layer in enumerate(dims):
            present = set(layer)
            if len(present) != len(layer):
                raise InvalidInputError(f"duplicate {k}-simplex")
            for s in layer:
                if len(s) != k + 1 or len(set(s)) != k + 1:
                    raise InvalidInputError(f"{s} is not a {k}-simplex")
                if any(not 0 <= x < self.vertex_count for x in s):
                    raise InvalidInputError(f"{s} uses an unknown vertex")
                if k and any(f not in set(dims[k - 1]) for f in _faces(s)):
                    raise InvalidInputError(f"a face of {s} is missing")
        object.__setattr__(self, "simplices", tuple(dims))

    @classmethod
    def from_maximal(cls, vertex_count: int, maximal: Iterable[Sequence[int]]) -> "Nerve":
        """Close a list of simplices under taking faces."""
        layers = [set() for _ in range(MAX_DIM + 1)]
        for v in range(vertex_count):
            layers[0].add((v,))
        for s in maximal:
            s = tuple(sorted(s))
            if len(s) - 1 > MAX_DIM:
                raise InvalidInputError("simplices above dimension 3 are not supported")
            for k in range(len(s)):
                for f in combinations(s, k + 1):
                    layers[k].add(f)
        return cls(vertex_count, tuple(tuple(sorted(l)) for l in layers))

    @classmethod
    def boundary_of_tetrahedron(cls) -> "Nerve":
        return cls.from_maximal(4, combinations(range(4), 3))

    @classmethod
    def solid_tetrahedron(cls) -> "Nerve":
        return cls.from_maximal(4, [range(4)])

    def count(self, k: int) -> int:
        return len(self.simplices[k]) if 0 <= k <= MAX_DIM else 0

    @cached_property
    def _index(self) -> tuple[dict, ...]:
        return tuple({s: i for i, s in enumerate(layer)} for layer in self.simplices)

    def position(self, simplex: Sequence[int]) -> int:
        return self._index[len(simplex) - 1][tuple(simplex)]

    def has_simplex(self, simplex: Sequence[int]) -> bool:
        k = len(simplex) - 1
        return 0 <= k <= MAX_DIM and tuple(sorted(simplex)) in self._index[k]


def _faces(s: tuple[int, ...]) -> list[tuple[int, ...]]:
    return [s[:i] + s[i + 1 :] for i in range(len(s))]


def _reduce(x, n: int):
    if n:
        return int(x) % n
    x = Fraction(x)
    return x - (x.numerator // x.denominator)


@dataclass(frozen=True)
class Cochain:
    nerve: Nerve
    degree: int
    modulus: int
    values: tuple

    def __post_init__(self):
        if not 0 <= self.degree <= MAX_DIM:
            raise InvalidInputError("cochain degree must be between 0 and 3")
        if self.modulus < 0:
            raise InvalidInputError("modulus must be >= 0 (0 means Q/Z)")
        vals = tuple(_reduce(x, self.modulus) for x in self.values)
        if len(vals) != self.nerve.count(self.degree):
            raise InvalidInputError(
                f"{len(vals)} values for {self.nerve.count(self.degree)} {self.degree}-simplices"
            )
        object.__setattr__(self, "values", vals)

    @classmethod
    def zero(cls, nerve: Nerve, degree: int, modulus: int) -> "Cochain":
        return cls(nerve, degree, modulus, (0,) * nerve.count(degree))

    @classmethod
    def from_dict(cls, nerve: Nerve, degree: int, modulus: int, values: dict) -> "Cochain":
        vals = [values.get(s, 0) for s in nerve.simplices[degree]]
        return cls(nerve, degree, modulus, vals)

    def value(self, simplex: Sequence[int]):
        return self.values[self.nerve.position(tuple(simplex))]

    def _check(self, other: "Cochain"):
        if (self.nerve, self.degree, self.modulus) != (other.nerve, other.degree, other.modulus):
            raise InvalidInputError("cochains differ in nerve, degree or coefficients")

    def __add__(self, other):
        self._check(other)
        return Cochain(self.nerve, self.degree, self.modulus,
                       tuple(a + b for a, b in zip(self.values, other.values)))

    def __neg__(self):
        return Cochain(self.nerve, self.degree, self.modulus, tuple(-a for a in self.values))

    def __sub__(self, other):
        return self + (-other)

    @property
    def is_zero(self) -> bool:
        return not any(self.values)


def coboundary(c: Cochain) -> Cochain:
    """Alternating-sum differential ``(delta c)(s) = sum_i (-1)^i c(s minus vertex i)``."""
    if c.degree >= MAX_DIM:
        raise InvalidInputError("no coboundary out of degree 3")
    N = c.nerve
    vals = []
    for s in N.simplices[c.degree + 1]:
        vals.append(sum((-1) ** i * c.value(f) for i, f in enumerate(_faces(s))))
    return Cochain(N, c.degree + 1, c.modulus, vals)


def coboundary_matrix(N: Nerve, k: int) -> IntMatrix:
    """Integer matrix of ``delta: C^k -> C^(k+1)`` in simplex order."""
    rows = []
    for s in N.simplices[k + 1] if k + 1 <= MAX_DIM else ():
        row = [0] * N.count(k)
        for i, f in enumerate(_faces(s)):
            row[N.position(f)] += (-1) ** i
        rows.append(row)
    return IntMatrix(rows, ncols=N.count(k))


def cech_cohomology(N: Nerve, k: int, n: int) -> FiniteAbelianGroup:
    """``H^k(N, Z/n)`` from the Smith forms of the integral coboundaries.

    ``H^k(Z/n) = H^k(Z) (x) Z/n + Tor(H^(k+1)(Z), Z/n)``.
    """
    if not 0 <= k <= 2:
        raise InvalidInputError("cohomology is available in degrees 0..2")
    if n < 1:
        raise InvalidInputError("modulus must be positive")
    out = smith_decomposition(coboundary_matrix(N, k))
    into = smith_decomposition(coboundary_matrix(N, k - 1)) if k else None
    r_in = into.rank if into else 0
    free = N.count(k) - out.rank - r_in
    orders = [n] * free
    if into:
        orders += [gcd(d, n) for d in into.diagonal]
    orders += [gcd(d, n) for d in out.diagonal]
    return FiniteAbelianGroup.from_orders(orders)


@dataclass(frozen=True)
class CohomologyTest:
    cohomologous: bool
    witness: Cochain | None

    def __bool__(self):
        return self.cohomologous


def _is_cocycle(c: Cochain) -> bool:
    return c.degree >= MAX_DIM or coboundary(c).is_zero


def is_cohomologous(a: Cochain, b: Cochain) -> CohomologyTest:
    """Solve ``delta x = a - b``; the witness ``x`` is returned on success."""
    a._check(b)
    if not (_is_cocycle(a) and _is_cocycle(b)):
        raise InvalidInputError("is_cohomologous needs cocycles")
    diff = a - b
    if a.degree == 0:
        return CohomologyTest(diff.is_zero, None)
    N, k, n = a.nerve, a.degree, a.modulus
    D = coboundary_matrix(N, k - 1)
    if n:
        x = IntegerSolver(D).solve_mod(diff.values, n)
    else:
        x = _solve_qz(D, diff.values)
    if x is None:
        return CohomologyTest(False, None)
    w = Cochain(N, k - 1, n, x)
    if coboundary(w) != diff:
        raise InvariantViolation("coboundary solve returned a wrong witness")
    return CohomologyTest(True, w)


def _solve_qz(D: IntMatrix, t: Sequence[Fraction]):
    s = smith_decomposition(D)
    c = [sum(Fraction(u) * x for u, x in zip(row, t)) for row in s.U.rows]
    z = [Fraction(0)] * D.ncols
    for i, ci in enumerate(c):
        if i < s.rank:
            z[i] = ci / s.D[i, i]
        elif ci.denominator != 1:
            return None
    return tuple(sum(Fraction(v) * x for v, x in zip(row, z)) for row in s.V.rows)


@dataclass(frozen=True)
class GluingData:
    """Rank-one gluing: transition values on edges and the prescribed twist."""

    transitions: Cochain
    twist: Cochain

    def __post_init__(self):
        lam, alpha = self.transitions, self.twist
        if lam.degree != 1 or alpha.degree != 2:
            raise InvalidInputError("gluing data needs a 1-cochain and a 2-cochain")
        if lam.nerve != alpha.nerve or lam.modulus != alpha.modulus:
            raise InvalidInputError("transitions and twist live on different nerves/coefficients")

    @property
    def nerve(self) -> Nerve:
        return self.transitions.nerve

    def transition(self, i: int, j: int):
        """``lambda_ij`` for any ordered pair: ``lambda_ii = 0``, ``lambda_ji = -lambda_ij``."""
        if i == j:
            return _reduce(0, self.transitions.modulus)
        if i < j:
            return self.transitions.value((i, j))
        return _reduce(-self.transitions.value((j, i)), self.transitions.modulus)


def verify_gluing(g: GluingData) -> bool:
    """Check identity, inverse and triple-overlap conditions edge by edge."""
    n = g.transitions.modulus
    for (v,) in g.nerve.simplices[0]:
        if g.transition(v, v) != 0:
            return False
    for i, j in g.nerve.simplices[1]:
        if _reduce(g.transition(i, j) + g.transition(j, i), n) != 0:
            return False
    for i, j, k in g.nerve.simplices[2]:
        total = _reduce(g.transition(i, j) + g.transition(j, k) + g.transition(k, i), n)
        if total != g.twist.value((i, j, k)):
            return False
    return True


def tensor_gluing(g: GluingData, h: GluingData) -> GluingData:
    """Tensor product: transitions and twists add."""
    if g.nerve != h.nerve or g.transitions.modulus != h.transitions.modulus:
        raise InvalidInputError("gluing data on different nerves/coefficients")
    return GluingData(g.transitions + h.transitions, g.twist + h.twist)


def inverse_gluing(g: GluingData) -> GluingData:
    """Dual: transitions and twist are negated."""
    return GluingData(-g.transitions, -g.twist)


def hom_gluing(g: GluingData, h: GluingData) -> GluingData:
    """``Hom(g, h)``: twisted by ``twist(h) - twist(g)``."""
    return tensor_gluing(inverse_gluing(g), h)
