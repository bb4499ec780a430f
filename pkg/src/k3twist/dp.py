"""Kernel arithmetic for pairs of Brauer classes on one transcendental lattice.

For ``alpha, beta`` on ``T`` the kernel of ``beta`` restricted to
``Ker alpha`` is ``Ker alpha ∩ Ker beta``, and symmetrically. The check
below computes both sides by different routes (restriction followed by a
kernel versus a general sublattice intersection) and compares spans.
"""

from __future__ import annotations

from dataclasses import dataclass

from .brauer import BrauerClass, kernel, restrict
from .errors import InvalidInputError
from .lattice import Sublattice, intersection, quotient_structure

__all__ = ["TwistedPair", "DPResult", "kernel_intersection", "dp_identity_check"]


@dataclass(frozen=True, eq=False)
class TwistedPair:
    t: Sublattice
    alpha: BrauerClass
    beta: BrauerClass

    def __post_init__(self):
        for c in (self.alpha, self.beta):
            same = c.lattice is self.t or (
                c.lattice.ambient.gram == self.t.ambient.gram and c.lattice.basis == self.t.basis
            )
            if not same:
                raise InvalidInputError("both classes must be attached to the same lattice")


@dataclass(frozen=True)
class DPResult:
    passed: bool
    witness: tuple[int, ...] | None = None
    detail: str = ""

    def __bool__(self):
        return self.passed


def kernel_intersection(p: TwistedPair) -> Sublattice:
    """``Ker alpha ∩ Ker beta``; its index in ``t`` divides ``ord(alpha) ord(beta)``."""
    return intersection(kernel(p.alpha), kernel(p.beta))


def dp_identity_check(p: TwistedPair) -> DPResult:
    both = kernel_intersection(p)
    _, idx_both = _index(both, p.t)
    for first, second, tag in ((p.alpha, p.beta, "alpha"), (p.beta, p.alpha, "beta")):
        K = kernel(first)
        inner = kernel(restrict(second, K))
        for x in inner.vectors:
            if not both.contains(x):
                return DPResult(False, x, f"kernel inside Ker {tag} has an extra vector")
        for x in both.vectors:
            if not inner.contains(x):
                return DPResult(False, x, f"kernel inside Ker {tag} misses a vector")
        _, idx = _index(inner, p.t)
        if idx != idx_both:
            return DPResult(False, None, f"index mismatch inside Ker {tag}")
    return DPResult(True)


def _index(S: Sublattice, T: Sublattice):
    group, _ = quotient_structure(S, T)
    return group, group.order
