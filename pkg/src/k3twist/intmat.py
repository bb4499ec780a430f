"""Exact integer matrices and the normal forms built on them.

Everything here works on Python ``int`` so entries never overflow. The
ranks involved in K3 computations are at most 24, so plain nested lists
are fast enough and no fixed-width path is offered.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

__all__ = [
    "IntMatrix",
    "SmithForm",
    "determinant",
    "smith_decomposition",
    "smith_normal_form",
    "invariant_factors",
    "hermite_rows",
    "integer_kernel",
    "column_span_basis",
    "IntegerSolver",
    "solve",
    "solve_mod",
    "kernel_mod",
    "lexmin_solution_mod",
]


class IntMatrix:
    """Immutable dense matrix of arbitrary-precision integers.

    Parameters
    ----------
    rows : iterable of iterables of int
        Row-major entries.
    ncols : int, optional
        Column count; only needed to build matrices with zero rows.
    """

    __slots__ = ("_rows", "_ncols")

    def __init__(self, rows: Iterable[Iterable[int]], ncols: int | None = None):
        if isinstance(rows, IntMatrix):
            self._rows = rows._rows
            self._ncols = rows._ncols
            return
        data = tuple(tuple(operator.index(x) for x in r) for r in rows)
        if data:
            widths = {len(r) for r in data}
            if len(widths) != 1:
                raise ValueError("ragged rows")
            width = widths.pop()
            if ncols is not None and ncols != width:
                raise ValueError("ncols does not match row length")
            ncols = width
        elif ncols is None:
            ncols = 0
        self._rows = data
        self._ncols = ncols

    # -- constructors -------------------------------------------------
    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(int(i == j) for j in range(n)) for i in range(n))

    @classmethod
    def zeros(cls, m: int, n: int) -> "IntMatrix":
        return cls(((0,) * n for _ in range(m)), ncols=n)

    @classmethod
    def diag(cls, entries: Sequence[int]) -> "IntMatrix":
        k = len(entries)
        return cls(
            tuple(entries[i] if i == j else 0 for j in range(k)) for i in range(k)
        )

    @classmethod
    def from_columns(cls, cols: Iterable[Sequence[int]], nrows: int | None = None):
        cols = [tuple(c) for c in cols]
        if not cols:
            return cls.zeros(nrows or 0, 0)
        m = len(cols[0])
        if nrows is not None and nrows != m:
            raise ValueError("column length does not match nrows")
        return cls((tuple(c[i] for c in cols) for i in range(m)), ncols=len(cols))

    @classmethod
    def block_diag(cls, *blocks: "IntMatrix") -> "IntMatrix":
        n = sum(b.ncols for b in blocks)
        rows = []
        offset = 0
        for b in blocks:
            for r in b.rows:
                rows.append((0,) * offset + r + (0,) * (n - offset - b.ncols))
            offset += b.ncols
        return cls(rows, ncols=n)

    # -- shape and access ----------------------------------------------
    @property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        return self._rows

    @property
    def nrows(self) -> int:
        return len(self._rows)

    @property
    def ncols(self) -> int:
        return self._ncols

    @property
    def shape(self) -> tuple[int, int]:
        return len(self._rows), self._ncols

    @property
    def entries(self) -> tuple[int, ...]:
        """Row-major flat entries."""
        return tuple(x for r in self._rows for x in r)

    def row(self, i: int) -> tuple[int, ...]:
        return self._rows[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self._rows)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self._ncols)]

    def __getitem__(self, idx):
        i, j = idx
        return self._rows[i][j]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self._rows]

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(zip(*self._rows), ncols=self.nrows) if self._rows else \
            IntMatrix.zeros(self._ncols, 0)

    def select_columns(self, idx: Iterable[int]) -> "IntMatrix":
        idx = list(idx)
        return IntMatrix((tuple(r[j] for j in idx) for r in self._rows), ncols=len(idx))

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch")
        return IntMatrix(
            (a + b for a, b in zip(self._rows, other._rows)),
            ncols=self._ncols + other._ncols,
        )

    def is_square(self) -> bool:
        return self.nrows == self._ncols

    def is_symmetric(self) -> bool:
        return self.is_square() and all(
            self._rows[i][j] == self._rows[j][i]
            for i in range(self.nrows)
            for j in range(i)
        )

    # -- arithmetic ----------------------------------------------------
    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self._ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            cols = other.columns()
            return IntMatrix(
                (tuple(_dot(r, c) for c in cols) for r in self._rows),
                ncols=other.ncols,
            )
        vec = tuple(other)
        if len(vec) != self._ncols:
            raise ValueError("vector length mismatch")
        return tuple(_dot(r, vec) for r in self._rows)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(
            (tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)),
            ncols=self._ncols,
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def __neg__(self) -> "IntMatrix":
        return self.scale(-1)

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix((tuple(k * x for x in r) for r in self._rows), ncols=self._ncols)

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.shape, self._rows))

    def __repr__(self):
        return f"IntMatrix({self.tolist()!r})"


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b) if x and y)


# ----------------------------------------------------------------------
# determinant


def determinant(M) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    M = IntMatrix(M)
    if not M.is_square():
        raise ValueError("determinant of a non-square matrix")
    n = M.nrows
    if n == 0:
        return 1
    a = M.tolist()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


# ----------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithForm:
    """Result of :func:`smith_decomposition`: ``U @ A @ V == D``.

    ``U_inv`` and ``V_inv`` are the exact inverses of the unimodular
    transforms, tracked during elimination rather than recomputed.
    """

    D: IntMatrix
    U: IntMatrix
    V: IntMatrix
    U_inv: IntMatrix
    V_inv: IntMatrix
    rank: int

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.D[i, i] for i in range(self.rank))


def smith_decomposition(A) -> SmithForm:
    """Smith normal form with both transforms and their inverses.

    The nonzero diagonal entries of ``D`` are positive and each divides
    the next.
    """
    A = IntMatrix(A)
    m, n = A.shape
    D = A.tolist()
    U = IntMatrix.identity(m).tolist()
    Ui = IntMatrix.identity(m).tolist()
    V = IntMatrix.identity(n).tolist()
    Vi = IntMatrix.identity(n).tolist()

    def swap_rows(i, j):
        if i == j:
            return
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]
        for row in Ui:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        D[dst] = [a + q * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]
        for row in Ui:
            row[src] -= q * row[dst]

    def neg_row(i):
        D[i] = [-x for x in D[i]]
        U[i] = [-x for x in U[i]]
        for row in Ui:
            row[i] = -row[i]

    def swap_cols(i, j):
        if i == j:
            return
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_col(dst, src, q):
        # col_dst += q * col_src
        for row in D:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]
        Vi[src] = [a - q * b for a, b in zip(Vi[src], Vi[dst])]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = D[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            p = D[t][t]
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
            small = None
            for i in range(t + 1, m):
                if D[i][t] and (small is None or abs(D[i][t]) < small[0]):
                    small = (abs(D[i][t]), "r", i)
            for j in range(t + 1, n):
                if D[t][j] and (small is None or abs(D[t][j]) < small[0]):
                    small = (abs(D[t][j]), "c", j)
            if small is not None:
                if small[1] == "r":
                    swap_rows(t, small[2])
                else:
                    swap_cols(t, small[2])
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if D[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if D[t][t] < 0:
            neg_row(t)
        t += 1

    return SmithForm(
        D=IntMatrix(D, ncols=n),
        U=IntMatrix(U, ncols=m),
        V=IntMatrix(V, ncols=n),
        U_inv=IntMatrix(Ui, ncols=m),
        V_inv=IntMatrix(Vi, ncols=n),
        rank=t,
    )


def smith_normal_form(A) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(D, U, V)`` with ``U @ A @ V == D`` in Smith form."""
    s = smith_decomposition(A)
    return s.D, s.U, s.V


def invariant_factors(A) -> tuple[int, ...]:
    """Nonzero diagonal of the Smith form of ``A``."""
    return smith_decomposition(A).diagonal


# ----------------------------------------------------------------------
# Hermite normal form on row vectors


def hermite_rows(vectors: Iterable[Sequence[int]], length: int | None = None) -> list[tuple[int, ...]]:
    """Row-style Hermite normal form of the Z-span of ``vectors``.

    Returns the nonzero rows of the echelon basis: leading entries are
    positive, and every entry above a leading entry lies in
    ``[0, leading)``. The result depends only on the lattice spanned, which
    makes it the canonical basis used throughout the package.
    """
    work = [list(v) for v in vectors if any(v)]
    if length is None:
        length = len(work[0]) if work else 0
    result: list[list[int]] = []
    for c in range(length):
        nz = [r for r in work if r[c]]
        if not nz:
            continue
        rest = [r for r in work if not r[c]]
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[c]))
            p = nz[0]
            keep = [p]
            for r in nz[1:]:
                q = r[c] // p[c]
                r = [a - q * b for a, b in zip(r, p)]
                if r[c]:
                    keep.append(r)
                elif any(r):
                    rest.append(r)
            nz = keep
        p = nz[0]
        if p[c] < 0:
            p = [-x for x in p]
        for prev in result:
            q = prev[c] // p[c]
            if q:
                prev[:] = [a - q * b for a, b in zip(prev, p)]
        result.append(p)
        work = rest
    return [tuple(r) for r in result]


def column_span_basis(A) -> IntMatrix:
    """Canonical basis (as columns) of the Z-span of the columns of ``A``."""
    A = IntMatrix(A)
    rows = hermite_rows(A.columns(), A.nrows)
    return IntMatrix.from_columns(rows, nrows=A.nrows)


def integer_kernel(A) -> IntMatrix:
    """Basis (as columns, Hermite-canonical) of ``{x in Z^n : A x = 0}``.

    The kernel of an integer matrix is always saturated in ``Z^n``.
    """
    A = IntMatrix(A)
    n = A.ncols
    s = smith_decomposition(A)
    vecs = [s.V.column(j) for j in range(s.rank, n)]
    return IntMatrix.from_columns(hermite_rows(vecs, n), nrows=n)


# ----------------------------------------------------------------------
# linear systems


class IntegerSolver:
    """Reusable solver for ``A y = b`` over Z (and mod n) for a fixed ``A``."""

    def __init__(self, A):
        self.A = IntMatrix(A)
        self.smith = smith_decomposition(self.A)

    def solve(self, b: Sequence[int]) -> tuple[int, ...] | None:
        """One integer solution ``y`` of ``A y = b``, or ``None``."""
        s = self.smith
        m, n = self.A.shape
        c = s.U @ tuple(b)
        z = [0] * n
        for i in range(m):
            if i < s.rank:
                d = s.D[i, i]
                if c[i] % d:
                    return None
                z[i] = c[i] // d
            elif c[i]:
                return None
        return s.V @ z

    def solve_mod(self, b: Sequence[int], n: int) -> tuple[int, ...] | None:
        """One solution of ``A y = b (mod n)`` with entries in ``[0, n)``."""
        s = self.smith
        m, k = self.A.shape
        c = [x % n for x in s.U @ tuple(b)]
        z = [0] * k
        for i in range(m):
            d = s.D[i, i] if i < s.rank else 0
            g = gcd(d, n)
            if c[i] % g:
                return None
            if i < s.rank and i < k:
                mod = n // g
                z[i] = (c[i] // g) * pow(d // g, -1, mod) % mod if mod > 1 else 0
        return tuple(x % n for x in s.V @ z)


def solve(A, b: Sequence[int]) -> tuple[int, ...] | None:
    """One integer solution of ``A y = b`` or ``None`` if there is none."""
    return IntegerSolver(A).solve(b)


def solve_mod(A, b: Sequence[int], n: int) -> tuple[int, ...] | None:
    """One solution of ``A y = b (mod n)``, entries reduced to ``[0, n)``."""
    return IntegerSolver(A).solve_mod(b, n)


def kernel_mod(A, n: int) -> list[tuple[int, ...]]:
    """Hermite basis of the full-rank lattice ``{y : A y = 0 (mod n)}``.

    The lattice contains ``n Z^k``, so the basis is square and upper
    triangular with positive diagonal.
    """
    A = IntMatrix(A)
    m, k = A.shape
    stacked = A.hstack(IntMatrix.identity(m).scale(n))
    ker = integer_kernel(stacked)
    gens = [col[:k] for col in ker.columns()]
    gens += [tuple(n if i == j else 0 for i in range(k)) for j in range(k)]
    return hermite_rows(gens, k)


def lexmin_solution_mod(A, b: Sequence[int], n: int) -> tuple[int, ...] | None:
    """Lexicographically smallest solution of ``A y = b (mod n)`` in ``[0, n)^k``."""
    y = solve_mod(A, b, n)
    if y is None:
        return None
    y = list(y)
    for i, row in enumerate(kernel_mod(A, n)):
        q = y[i] // row[i]
        if q:
            y = [a - q * r for a, r in zip(y, row)]
    return tuple(y)
