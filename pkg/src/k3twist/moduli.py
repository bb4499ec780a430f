"""Lattice side of a two-dimensional moduli space of sheaves on a K3.

For an algebraic, primitive, isotropic Mukai vector ``v`` the second
cohomology of the moduli space ``M`` is ``v^perp / v``. This module builds
that lattice, its Neron-Severi/transcendental split, the embedding
``phi: T_X -> T_M`` given by ``lambda -> (0, lambda, 0)``, the index ``n``
of that embedding, and the cyclic group of Brauer classes on ``M`` that
vanish on ``phi(T_X)``.

Lattice data alone pins down the obstruction class only up to the choice of
generator of that cyclic group. The generator reported first is normalized
by ``q(phi(lambda)/n) = 1`` where ``q`` is the residue map onto ``Z/n`` and
``lambda`` is the lexicographically smallest admissible choice.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from math import gcd
from typing import Sequence

from .brauer import BrauerClass, brauer_from_h2_class, kernel, restrict, zero_class
from .errors import (
    AdmissibilityError,
    InvalidInputError,
    InvariantViolation,
    K3TwistError,
)
from .intmat import IntegerSolver, IntMatrix, integer_kernel, lexmin_solution_mod, smith_decomposition
from .lattice import (
    FiniteAbelianGroup,
    Lattice,
    LatticeEmbedding,
    LatticeVector,
    QuotientMap,
    Sublattice,
    classify_form,
    orthogonal_complement,
    quotient_structure,
    saturation,
    signature,
    solve_pairing_value,
)
from .mukai import (
    K3Surface,
    MukaiVector,
    is_admissible_mukai_vector,
    k3,
    mukai_lattice,
    mukai_pairing,
)

__all__ = [
    "ModuliProblem",
    "ModuliLattice",
    "ModuliReport",
    "fineness_index",
    "moduli_lattice",
    "moduli_ns_and_t",
    "phi_transcendental",
    "mukai_lambda",
    "check_mukai_lambda",
    "obstruction_group",
    "obstruction_representative",
    "find_u_unit",
    "verify_theorem_suite",
    "CLAUSES",
]


@dataclass(frozen=True)
class ModuliLattice:
    """``v^perp / v`` with explicit lifts and the projection from ``v^perp``."""

    lattice: Lattice
    vperp: Sublattice
    lifts: IntMatrix
    _proj_rows: tuple[tuple[int, ...], ...] = field(repr=False)

    def project(self, x: Sequence[int]) -> tuple[int, ...]:
        """Class in ``v^perp / v`` of a Mukai-lattice vector orthogonal to ``v``."""
        y = self.vperp.coordinates(x)
        if y is None:
            raise InvalidInputError("vector is not orthogonal to v")
        return tuple(sum(a * b for a, b in zip(r, y)) for r in self._proj_rows)

    def lift(self, z: Sequence[int]) -> tuple[int, ...]:
        return self.lifts @ tuple(z)


class ModuliProblem:
    """A K3 surface ``X`` with an admissible Mukai vector ``v``.

    Intermediate results of the pipeline are cached on the instance, so the
    module-level operations can be called in any order without recomputation.
    """

    def __init__(self, X: K3Surface, v: MukaiVector):
        adm = is_admissible_mukai_vector(X, v)
        if not all(adm):
            raise AdmissibilityError(adm.failed())
        self.X = X
        self.v = v

    def __repr__(self):
        return f"ModuliProblem({self.X!r}, r={self.v.r}, s={self.v.s})"

    @cached_property
    def n(self) -> int:
        A = self.X.algebraic_sublattice
        pairings = A.basis.T @ (mukai_lattice().gram @ self.v.coords)
        return reduce(gcd, pairings, 0)

    @cached_property
    def h2m(self) -> ModuliLattice:
        ML = mukai_lattice()
        vcoords = self.v.coords
        vperp = orthogonal_complement(Sublattice(ML, IntMatrix.from_columns([vcoords])))
        c = vperp.coordinates(vcoords)
        if c is None:
            raise InvariantViolation("isotropic v is not contained in v^perp")
        sm = smith_decomposition(IntMatrix.from_columns([c]))
        if sm.diagonal != (1,):
            raise InvariantViolation("v is not primitive inside v^perp")
        rest = range(1, vperp.rank)
        lifts = vperp.basis @ sm.U_inv.select_columns(rest)
        gram = lifts.T @ ML.gram @ lifts
        H = ModuliLattice(Lattice(gram, name="H2(M)"), vperp, lifts, tuple(sm.U.row(i) for i in rest))
        form = classify_form(H.lattice)
        if H.lattice.rank != 22 or not form.even or not form.unimodular:
            raise InvariantViolation(f"v^perp/v is not even unimodular of rank 22: {form}")
        if signature(H.lattice) != (3, 19):
            raise InvariantViolation("v^perp/v does not have signature (3, 19)")
        return H

    def _t_x_image(self) -> list[tuple[int, ...]]:
        """``(0, t, 0)`` projected to ``v^perp/v`` for the basis of ``T_X``."""
        return [self.h2m.project((0, *t, 0)) for t in self.X.transcendental.vectors]

    @cached_property
    def ns_t(self) -> tuple[Sublattice, Sublattice]:
        H = self.h2m
        A = self.X.algebraic_sublattice
        row = IntMatrix([A.basis.T @ (mukai_lattice().gram @ self.v.coords)])
        alg_perp = [A.to_ambient(k) for k in integer_kernel(row).columns()]
        ns_m = saturation(Sublattice.span(H.lattice, [H.project(x) for x in alg_perp]))
        t_m = orthogonal_complement(ns_m)
        cross = saturation(Sublattice.span(H.lattice, self._t_x_image()))
        if not t_m.same_span(cross):
            raise InvariantViolation("T_M differs from the saturation of the image of T_X")
        if ns_m.rank != self.X.picard_rank:
            raise InvariantViolation("Picard ranks of X and M differ")
        return ns_m, t_m

    @cached_property
    def phi(self) -> LatticeEmbedding:
        _, t_m = self.ns_t
        cols = []
        for x in self._t_x_image():
            c = t_m.coordinates(x)
            if c is None:
                raise InvariantViolation("image of T_X is not contained in T_M")
            cols.append(c)
        try:
            return LatticeEmbedding(
                self.X.transcendental.lattice, t_m.lattice, IntMatrix.from_columns(cols, t_m.rank)
            )
        except K3TwistError as exc:
            raise InvariantViolation(f"phi is not an isometric embedding: {exc}") from exc

    @cached_property
    def phi_image(self) -> Sublattice:
        _, t_m = self.ns_t
        return Sublattice(self.h2m.lattice, t_m.basis @ self.phi.matrix)

    @cached_property
    def cokernel(self) -> tuple[FiniteAbelianGroup, QuotientMap]:
        _, t_m = self.ns_t
        group, qmap = quotient_structure(self.phi_image, t_m)
        if not group.is_cyclic or group.order != self.n:
            raise InvariantViolation(f"T_M / phi(T_X) is {group}, expected Z/{self.n}")
        return group, qmap

    @cached_property
    def lam(self) -> tuple[int, ...]:
        """``lambda`` in coordinates of the ``T_X`` basis."""
        n, v = self.n, self.v
        TB = self.X.transcendental.basis
        if n == 1:
            y = (0,) * TB.ncols
        else:
            if v.r % n or v.s % n:
                raise InvariantViolation("H^0/H^4 parts of v are not divisible by n")
            y = lexmin_solution_mod(TB, v.l, n)
            if y is None:
                raise InvariantViolation("no lambda in T_X with v - lambda divisible by n")
        if not self._lambda_ok(y):
            raise InvariantViolation("lambda fails the divisibility/generation conditions")
        return y

    def _lambda_ok(self, y: Sequence[int]) -> bool:
        n, v = self.n, self.v
        lam = self.X.transcendental.to_ambient(y)
        if v.r % n or v.s % n or any((a - b) % n for a, b in zip(v.l, lam)):
            return False
        image = self.phi(y)
        if any(c % n for c in image):
            return False
        group, qmap = self.cokernel
        if group.is_trivial:
            return True
        return gcd(qmap(tuple(c // n for c in image))[0], n) == 1

    @cached_property
    def obstruction(self) -> list[BrauerClass]:
        n = self.n
        _, t_m = self.ns_t
        if n == 1:
            gens = [zero_class(t_m)]
        else:
            _, qmap = self.cokernel
            g0 = qmap(tuple(c // n for c in self.phi(self.lam)))[0]
            inv = pow(g0, -1, n)
            q = [inv * qmap(e)[0] % n for e in IntMatrix.identity(t_m.rank).columns()]
            gens = [
                BrauerClass(t_m, tuple(Fraction(k * qj, n) for qj in q))
                for k in range(1, n)
                if gcd(k, n) == 1
            ]
        for alpha in gens:
            if alpha.order != n:
                raise InvariantViolation(f"obstruction generator has order {alpha.order}, not {n}")
            if not kernel(alpha).same_span(self.phi_image):
                raise InvariantViolation("kernel of obstruction generator is not phi(T_X)")
            if not restrict(alpha, self.phi_image).is_zero:
                raise InvariantViolation("obstruction generator does not vanish on phi(T_X)")
        return gens


# ----------------------------------------------------------------------
# operations


def fineness_index(P: ModuliProblem) -> int:
    """gcd of ``(u . v)`` over algebraic integral ``u``."""
    return P.n


def moduli_lattice(P: ModuliProblem) -> ModuliLattice:
    """``v^perp / v``: even, unimodular, rank 22, signature (3, 19)."""
    return P.h2m


def moduli_ns_and_t(P: ModuliProblem) -> tuple[Sublattice, Sublattice]:
    """``(NS(M), T_M)`` inside ``v^perp / v``."""
    return P.ns_t


def phi_transcendental(P: ModuliProblem) -> LatticeEmbedding:
    """``phi: T_X -> T_M`` in the bases of the two transcendental lattices."""
    P.cokernel
    return P.phi


def mukai_lambda(P: ModuliProblem) -> LatticeVector:
    """``lambda in T_X`` with ``v - (0, lambda, 0)`` divisible by ``n``."""
    return LatticeVector(k3(), P.X.transcendental.to_ambient(P.lam))


def check_mukai_lambda(P: ModuliProblem, lam: Sequence[int]) -> bool:
    """Test an arbitrary H^2 vector ``lam`` against the conditions on ``lambda``.

    ``lam`` must lie in ``T_X``, ``v - lam`` must be divisible by ``n``,
    ``phi(lam)`` must be divisible by ``n`` in ``T_M`` and ``phi(lam)/n``
    must generate ``T_M / phi(T_X)``.
    """
    y = P.X.transcendental.coordinates(tuple(lam))
    if y is None:
        return False
    return P._lambda_ok(y)


def obstruction_group(P: ModuliProblem) -> tuple[int, list[BrauerClass]]:
    """Order and generators of the classes on ``T_M`` vanishing on ``phi(T_X)``."""
    return P.n, list(P.obstruction)


def obstruction_representative(P: ModuliProblem, alpha: BrauerClass) -> tuple[Fraction, ...]:
    """A rational class ``w`` on ``M`` with ``[w] = alpha``.

    Exists because ``v^perp/v`` is unimodular and ``T_M`` is primitive.
    """
    _, t_m = P.ns_t
    H = P.h2m.lattice
    m = alpha.order
    rows = t_m.basis.T @ H.gram
    x = IntegerSolver(rows).solve(tuple(int(a * m) for a in alpha.values))
    if x is None:
        raise InvariantViolation("functional on T_M is not represented by a class on M")
    return tuple(Fraction(c, m) for c in x)


def find_u_unit(P: ModuliProblem) -> MukaiVector:
    """Some integral ``u`` with ``(u . v) = 1``."""
    u = solve_pairing_value(P.v.as_lattice_vector(), 1)
    return MukaiVector.from_coords(u.coords)


CLAUSES = {
    "a_h2m_even_unimodular": "v^perp/v is even, unimodular, rank 22, signature (3, 19)",
    "b_phi_isometric": "phi: T_X -> T_M preserves the form and is injective",
    "c_cokernel_cyclic_n": "T_M / phi(T_X) is cyclic of order n",
    "d_lambda_divisibility": "lambda in T_X with v - lambda and phi(lambda) divisible by n",
    "e_obstruction_generators": "every generator has order n and kernel phi(T_X)",
    "f_picard_consistency": "rank NS(M) + rank T_M = 22 and rank NS(M) = rank NS(X)",
    "g_u_unit": "some integral u has (u . v) = 1",
    "h_obstruction_membership": "canonical generator equals [w] for a class w with (w . phi(t)) in Z on T_X",
}


@dataclass
class ModuliReport:
    problem: ModuliProblem
    n: int | None = None
    h2m: Lattice | None = None
    ns_m: Sublattice | None = None
    t_m: Sublattice | None = None
    phi_t: LatticeEmbedding | None = None
    cokernel: FiniteAbelianGroup | None = None
    lam: LatticeVector | None = None
    cokernel_generator: tuple[int, ...] | None = None
    obstruction_generators: list[BrauerClass] = field(default_factory=list)
    obstruction_w: tuple[Fraction, ...] | None = None
    u: MukaiVector | None = None
    checks: dict[str, bool] = field(default_factory=dict)
    failures: dict[str, str] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return len(self.checks) == len(CLAUSES) and all(self.checks.values())


def verify_theorem_suite(P: ModuliProblem) -> ModuliReport:
    """Run every clause; failures are recorded in the report, never raised."""
    rep = ModuliReport(P)

    def clause(name, fn):
        try:
            ok = bool(fn())
        except K3TwistError as exc:
            rep.checks[name] = False
            rep.failures[name] = f"{type(exc).__name__}: {exc}"
            return
        rep.checks[name] = ok
        if not ok:
            rep.failures[name] = CLAUSES[name]

    rep.n = P.n

    def a():
        rep.h2m = P.h2m.lattice
        return True

    def b():
        phi = P.phi
        rep.phi_t = phi
        return phi.matrix.T @ phi.target.gram @ phi.matrix == phi.source.gram

    def c():
        group, _ = P.cokernel
        rep.cokernel = group
        return group.is_cyclic and group.order == P.n

    def d():
        rep.lam = mukai_lambda(P)
        rep.cokernel_generator = tuple(x // P.n for x in P.phi(P.lam))
        return check_mukai_lambda(P, rep.lam.coords)

    def e():
        gens = P.obstruction
        rep.obstruction_generators = list(gens)
        return all(g.order == P.n for g in gens)

    def f():
        ns_m, t_m = P.ns_t
        rep.ns_m, rep.t_m = ns_m, t_m
        return ns_m.rank + t_m.rank == 22 and ns_m.rank == P.X.picard_rank

    def g():
        rep.u = find_u_unit(P)
        return mukai_pairing(rep.u, P.v) == 1

    def h():
        alpha = P.obstruction[0]
        w = obstruction_representative(P, alpha)
        rep.obstruction_w = w
        if brauer_from_h2_class(alpha.lattice, w) != alpha:
            return False
        H = P.h2m.lattice
        Gw = H.gram @ w
        return all(
            sum(a * b for a, b in zip(Gw, x)).denominator == 1 for x in P.phi_image.vectors
        )

    for name, fn in zip(CLAUSES, (a, b, c, d, e, f, g, h)):
        clause(name, fn)
    return rep
