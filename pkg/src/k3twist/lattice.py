"""Integer lattices with symmetric bilinear forms.

A :class:`Lattice` is ``Z^rank`` with a symmetric Gram matrix. Sublattices
are stored by a basis whose columns are ambient coordinates; embeddings by
an integer matrix. All operations are exact.

The K3 lattice uses ``E8(-1)`` blocks, so the basis order is::

    0..7   first E8(-1)
    8..15  second E8(-1)
    16, 17 e, f of the first hyperbolic plane U
    18, 19 second U
    20, 21 third U
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from math import gcd, prod
from typing import NamedTuple, Sequence

from .errors import (
    AmbientMismatchError,
    DegenerateFormError,
    InvalidInputError,
    IsometryError,
    NoSolutionError,
)
from .intmat import (
    IntegerSolver,
    IntMatrix,
    column_span_basis,
    determinant as _det,
    hermite_rows,
    integer_kernel,
    smith_decomposition,
)

__all__ = [
    "FiniteAbelianGroup",
    "Lattice",
    "LatticeVector",
    "LatticeEmbedding",
    "Sublattice",
    "QuotientMap",
    "FormType",
    "pairing",
    "determinant",
    "classify_form",
    "signature",
    "orthogonal_complement",
    "saturation",
    "intersection",
    "quotient_structure",
    "solve_pairing_value",
    "hyperbolic_plane",
    "e8_lattice",
    "k3_lattice",
    "K3_RANK",
    "U1_E",
    "U1_F",
]

K3_RANK = 22
U1_E = 16
U1_F = 17


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """``Z/d1 x ... x Z/dk`` with ``1 < d1 | d2 | ... | dk``."""

    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        d = tuple(int(x) for x in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", d)
        if any(x <= 1 for x in d):
            raise InvalidInputError("invariant factors must exceed 1")
        if any(b % a for a, b in zip(d, d[1:])):
            raise InvalidInputError(f"invariant factors {d} do not form a divisibility chain")

    @classmethod
    def from_orders(cls, orders: Sequence[int]) -> "FiniteAbelianGroup":
        """Normalize a direct sum of cyclic groups ``Z/o_i`` (``o_i >= 1``)."""
        orders = [int(o) for o in orders if o != 1]
        if any(o <= 0 for o in orders):
            raise InvalidInputError("cyclic orders must be positive")
        if not orders:
            return cls()
        diag = smith_decomposition(IntMatrix.diag(orders)).diagonal
        return cls(tuple(x for x in diag if x > 1))

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    @property
    def is_cyclic(self) -> bool:
        return len(self.invariant_factors) <= 1

    def __str__(self):
        if not self.invariant_factors:
            return "0"
        return " x ".join(f"Z/{d}" for d in self.invariant_factors)


@dataclass(frozen=True)
class Lattice:
    """``Z^rank`` with a symmetric integer Gram matrix."""

    gram: IntMatrix
    name: str = field(default="", compare=False)

    def __post_init__(self):
        g = IntMatrix(self.gram)
        object.__setattr__(self, "gram", g)
        if not g.is_symmetric():
            raise InvalidInputError("Gram matrix must be square and symmetric")

    @property
    def rank(self) -> int:
        return self.gram.nrows

    @cached_property
    def det(self) -> int:
        return _det(self.gram)

    def form(self, x: Sequence[int], y: Sequence[int]) -> int:
        """Evaluate the form on raw coordinate tuples."""
        return sum(a * b for a, b in zip(x, self.gram @ y) if a)

    def vector(self, coords: Sequence[int]) -> "LatticeVector":
        return LatticeVector(self, tuple(coords))

    def basis_vector(self, i: int) -> "LatticeVector":
        return LatticeVector(self, tuple(int(i == j) for j in range(self.rank)))

    def direct_sum(self, *others: "Lattice") -> "Lattice":
        return Lattice(IntMatrix.block_diag(self.gram, *(o.gram for o in others)))

    def scaled(self, k: int) -> "Lattice":
        return Lattice(self.gram.scale(k))

    def require_nondegenerate(self):
        if self.det == 0:
            raise DegenerateFormError(f"degenerate form on {self.name or 'lattice'}")

    def __repr__(self):
        label = self.name or f"rank {self.rank}"
        return f"Lattice({label})"


@dataclass(frozen=True)
class LatticeVector:
    lattice: Lattice
    coords: tuple[int, ...]

    def __post_init__(self):
        c = tuple(int(x) for x in self.coords)
        object.__setattr__(self, "coords", c)
        if len(c) != self.lattice.rank:
            raise InvalidInputError(
                f"vector of length {len(c)} in a rank {self.lattice.rank} lattice"
            )

    def _check(self, other):
        if other.lattice != self.lattice:
            raise AmbientMismatchError("vectors belong to different lattices")

    def __add__(self, other):
        self._check(other)
        return LatticeVector(self.lattice, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._check(other)
        return LatticeVector(self.lattice, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return LatticeVector(self.lattice, tuple(-a for a in self.coords))

    def __mul__(self, k: int):
        return LatticeVector(self.lattice, tuple(k * a for a in self.coords))

    __rmul__ = __mul__

    @property
    def content(self) -> int:
        """gcd of the coordinates (0 for the zero vector)."""
        return reduce(gcd, self.coords, 0)

    @property
    def square(self) -> int:
        return self.lattice.form(self.coords, self.coords)


def pairing(v: LatticeVector, w: LatticeVector) -> int:
    """``v^T G w`` for two vectors of the same lattice."""
    if v.lattice != w.lattice:
        raise AmbientMismatchError("cannot pair vectors of different lattices")
    return v.lattice.form(v.coords, w.coords)


def determinant(L: Lattice) -> int:
    return L.det


class FormType(NamedTuple):
    even: bool
    unimodular: bool


def classify_form(L: Lattice) -> FormType:
    even = all(L.gram[i, i] % 2 == 0 for i in range(L.rank))
    return FormType(even, abs(L.det) == 1)


def signature(L: Lattice) -> tuple[int, int]:
    """``(p, q)`` by symmetric elimination over Q.

    When every remaining diagonal entry vanishes, the lowest-index pair
    ``(i, j)`` with nonzero cross term is merged (``x_i <- x_i + x_j``),
    which produces the nonzero pivot ``2 G_ij``.
    """
    M = [[Fraction(x) for x in r] for r in L.gram.rows]
    p = q = 0
    while M:
        n = len(M)
        piv = next((i for i in range(n) if M[i][i]), None)
        if piv is None:
            pair = next(((i, j) for i in range(n) for j in range(i + 1, n) if M[i][j]), None)
            if pair is None:
                raise DegenerateFormError("signature of a degenerate form")
            i, j = pair
            M[i] = [a + b for a, b in zip(M[i], M[j])]
            for r in M:
                r[i] += r[j]
            piv = i
        d = M[piv][piv]
        if d > 0:
            p += 1
        else:
            q += 1
        prow = M[piv]
        M = [
            [M[a][b] - M[a][piv] * prow[b] / d for b in range(n) if b != piv]
            for a in range(n)
            if a != piv
        ]
    return p, q


@dataclass(frozen=True, eq=False)
class LatticeEmbedding:
    """Isometric embedding ``source -> target`` given by a column matrix."""

    source: Lattice
    target: Lattice
    matrix: IntMatrix

    def __post_init__(self):
        m = IntMatrix(self.matrix)
        object.__setattr__(self, "matrix", m)
        if m.shape != (self.target.rank, self.source.rank):
            raise InvalidInputError(
                f"embedding matrix has shape {m.shape}, expected "
                f"{(self.target.rank, self.source.rank)}"
            )
        if m.T @ self.target.gram @ m != self.source.gram:
            raise IsometryError("embedding does not preserve the bilinear form")
        if smith_decomposition(m).rank != self.source.rank:
            raise InvalidInputError("embedding matrix does not have full column rank")

    def __call__(self, coords: Sequence[int]) -> tuple[int, ...]:
        return self.matrix @ tuple(coords)

    def image(self) -> "Sublattice":
        return Sublattice(self.target, self.matrix)


@dataclass(frozen=True, eq=False)
class Sublattice:
    """Sublattice of ``ambient`` spanned by the columns of ``basis``.

    Equality of sublattices is a question about spans, not bases; use
    :meth:`same_span`.
    """

    ambient: Lattice
    basis: IntMatrix
    saturated: bool = False

    def __post_init__(self):
        b = IntMatrix(self.basis)
        if b.nrows != self.ambient.rank:
            if b.nrows == 0 and b.ncols == 0:
                b = IntMatrix.zeros(self.ambient.rank, 0)
            else:
                raise InvalidInputError("basis vectors do not match the ambient rank")
        object.__setattr__(self, "basis", b)
        if b.ncols and self._smith.rank != b.ncols:
            raise InvalidInputError("sublattice basis is not linearly independent")
        if self.saturated and not self.is_saturated():
            raise InvalidInputError("sublattice flagged saturated is not primitive")

    @classmethod
    def span(cls, ambient: Lattice, generators: Sequence[Sequence[int]]) -> "Sublattice":
        """Sublattice generated by possibly dependent vectors (canonical basis)."""
        gens = IntMatrix.from_columns(generators, nrows=ambient.rank)
        return cls(ambient, column_span_basis(gens))

    @classmethod
    def whole(cls, ambient: Lattice) -> "Sublattice":
        return cls(ambient, IntMatrix.identity(ambient.rank), saturated=True)

    @cached_property
    def _smith(self):
        return smith_decomposition(self.basis)

    @cached_property
    def _solver(self) -> IntegerSolver:
        return IntegerSolver(self.basis)

    @property
    def rank(self) -> int:
        return self.basis.ncols

    @property
    def vectors(self) -> list[tuple[int, ...]]:
        return self.basis.columns()

    @cached_property
    def gram(self) -> IntMatrix:
        return self.basis.T @ self.ambient.gram @ self.basis

    @cached_property
    def lattice(self) -> Lattice:
        """The sublattice as an abstract lattice in its own basis."""
        return Lattice(self.gram)

    def is_saturated(self) -> bool:
        return all(d == 1 for d in self._smith.diagonal)

    def coordinates(self, x: Sequence[int]) -> tuple[int, ...] | None:
        """Coordinates of ambient vector ``x`` in this basis, or ``None``."""
        return self._solver.solve(tuple(x))

    def contains(self, x: Sequence[int]) -> bool:
        return self.coordinates(x) is not None

    def contains_sublattice(self, other: "Sublattice") -> bool:
        if other.ambient != self.ambient:
            raise AmbientMismatchError("sublattices of different lattices")
        return all(self.contains(c) for c in other.vectors)

    def same_span(self, other: "Sublattice") -> bool:
        return self.contains_sublattice(other) and other.contains_sublattice(self)

    def to_ambient(self, coords: Sequence[int]) -> tuple[int, ...]:
        return self.basis @ tuple(coords)

    def canonical(self) -> "Sublattice":
        """Same span with the Hermite-canonical basis."""
        return Sublattice(self.ambient, column_span_basis(self.basis), self.saturated)

    def __repr__(self):
        flag = ", saturated" if self.saturated else ""
        return f"Sublattice(rank {self.rank} in {self.ambient!r}{flag})"


def orthogonal_complement(S: Sublattice) -> Sublattice:
    """``{x : (x . s) = 0 for all s in S}``; saturated by construction."""
    S.ambient.require_nondegenerate()
    if S.rank == 0:
        return Sublattice.whole(S.ambient)
    rows = S.basis.T @ S.ambient.gram
    return Sublattice(S.ambient, integer_kernel(rows), saturated=True)


def saturation(S: Sublattice) -> Sublattice:
    """Smallest primitive sublattice containing ``S``."""
    if S.rank == 0:
        return Sublattice(S.ambient, S.basis, saturated=True)
    Ui = S._smith.U_inv
    cols = [Ui.column(j) for j in range(S.rank)]
    basis = IntMatrix.from_columns(hermite_rows(cols, S.ambient.rank), nrows=S.ambient.rank)
    return Sublattice(S.ambient, basis, saturated=True)


def intersection(A: Sublattice, B: Sublattice) -> Sublattice:
    if A.ambient != B.ambient:
        raise AmbientMismatchError("sublattices of different lattices")
    if A.rank == 0 or B.rank == 0:
        return Sublattice(A.ambient, IntMatrix.zeros(A.ambient.rank, 0))
    ker = integer_kernel(A.basis.hstack(-B.basis))
    gens = [A.to_ambient(c[: A.rank]) for c in ker.columns()]
    return Sublattice.span(A.ambient, gens)


class QuotientMap:
    """Residue map ``T -> T/S`` onto the invariant-factor presentation."""

    def __init__(self, T: Sublattice, rows: list[tuple[int, ...]], moduli: tuple[int, ...]):
        self.T = T
        self._rows = rows
        self.moduli = moduli

    def __call__(self, t_coords: Sequence[int]) -> tuple[int, ...]:
        """Residue tuple of a vector given in ``T`` coordinates."""
        t = tuple(t_coords)
        return tuple(
            sum(a * b for a, b in zip(r, t)) % d for r, d in zip(self._rows, self.moduli)
        )

    def of_ambient(self, x: Sequence[int]) -> tuple[int, ...]:
        coords = self.T.coordinates(x)
        if coords is None:
            raise InvalidInputError("vector is not in the larger sublattice")
        return self(coords)


def quotient_structure(S: Sublattice, T: Sublattice) -> tuple[FiniteAbelianGroup, QuotientMap]:
    """Finite quotient ``T/S`` for ``S`` of full rank inside ``T``."""
    if S.ambient != T.ambient:
        raise AmbientMismatchError("sublattices of different lattices")
    if S.rank != T.rank:
        raise InvalidInputError("quotient has infinite order (ranks differ)")
    cols = []
    for s in S.vectors:
        c = T.coordinates(s)
        if c is None:
            raise InvalidInputError("first sublattice is not contained in the second")
        cols.append(c)
    C = IntMatrix.from_columns(cols, nrows=T.rank)
    sm = smith_decomposition(C)
    if sm.rank != T.rank:
        raise InvalidInputError("quotient has infinite order")
    idx = [i for i, d in enumerate(sm.diagonal) if d > 1]
    group = FiniteAbelianGroup(tuple(sm.diagonal[i] for i in idx))
    return group, QuotientMap(T, [sm.U.row(i) for i in idx], group.invariant_factors)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        return -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def solve_pairing_value(v: LatticeVector, g: int) -> LatticeVector:
    """Some ``u`` with ``(u . v) = g``.

    Built by a running extended gcd over the pairings of ``v`` with the
    basis, left to right.
    """
    if g == 0:
        return LatticeVector(v.lattice, (0,) * v.lattice.rank)
    p = v.lattice.gram @ v.coords
    d = 0
    coeffs = [0] * len(p)
    for i, x in enumerate(p):
        if not x or (d and x % d == 0):
            continue
        d, a, b = _xgcd(d, x)
        coeffs = [a * c for c in coeffs]
        coeffs[i] = b
    if d == 0 or g % d:
        raise NoSolutionError(
            f"no vector pairs to {g} with v: pairings have gcd {d}"
        )
    k = g // d
    return LatticeVector(v.lattice, tuple(k * c for c in coeffs))


# ----------------------------------------------------------------------
# standard lattices

_E8_EDGES = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)]


def hyperbolic_plane() -> Lattice:
    return Lattice(IntMatrix([[0, 1], [1, 0]]), name="U")


def e8_lattice(negative: bool = True) -> Lattice:
    """E8 root lattice; ``negative=True`` gives the negated Cartan matrix E8(-1)."""
    s = -1 if negative else 1
    g = [[2 * s if i == j else 0 for j in range(8)] for i in range(8)]
    for i, j in _E8_EDGES:
        g[i][j] = g[j][i] = -s
    return Lattice(IntMatrix(g), name="E8(-1)" if negative else "E8")


def k3_lattice() -> Lattice:
    """``E8(-1)^2 + U^3``, rank 22, signature (3, 19)."""
    e8, u = e8_lattice(), hyperbolic_plane()
    L = e8.direct_sum(e8, u, u, u)
    return Lattice(L.gram, name="K3")
