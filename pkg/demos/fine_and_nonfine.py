"""Two moduli problems side by side: one fine, one not.

On the quartic (NS generated by h with h.h = 4) the vector v = (2, h, 1)
pairs to 1 with some algebraic class, so a universal sheaf can exist. On the
double plane (h.h = 8) every algebraic pairing with v = (2, h, 2) is even,
and the lattice computations below show where the order-2 obstruction lives.
"""

from k3twist import K3Surface, ModuliProblem, MukaiVector, verify_theorem_suite
from k3twist.moduli import CLAUSES


def describe(label, degree, r, s):
    X = K3Surface.rank_one(degree, label)
    h = X.ns.vectors[0]
    rep = verify_theorem_suite(ModuliProblem(X, MukaiVector(r, h, s)))
    print(f"== {label}: v = ({r}, h, {s}) with h.h = {degree}")
    print(f"fineness index n = {rep.n}")
    print(f"H^2(M) from v-perp/v: rank {rep.h2m.rank}, det {rep.h2m.det}")
    print(f"T_M / phi(T_X) = {rep.cokernel}")
    print(f"lambda (nonzero coordinates): {dict((i, x) for i, x in enumerate(rep.lam.coords) if x)}")
    for alpha in rep.obstruction_generators:
        nonzero = {i: str(x) for i, x in enumerate(alpha.values) if x}
        print(f"obstruction generator of order {alpha.order}, values {nonzero or 'all zero'}")
    print(f"a class u with (u . v) = 1: r={rep.u.r}, s={rep.u.s}, l support {[i for i, x in enumerate(rep.u.l) if x]}")
    for name, ok in rep.checks.items():
        print(f"  [{'ok' if ok else 'FAILED'}] {CLAUSES[name]}")
    print()
    return rep.passed


if __name__ == "__main__":
    ok = describe("quartic", 4, 2, 1)
    ok &= describe("double plane", 8, 2, 2)
    raise SystemExit(0 if ok else 1)
