"""Brauer classes as functionals on the transcendental lattice.

A rational class w in H^2 gives the functional t -> (w . t) mod Z on T_X.
Integral shifts and algebraic shifts of w do not change it; its order is
the index of its kernel. Two classes then illustrate the kernel identity:
restricting one class to the kernel of the other and taking the kernel
lands on the common kernel, whichever class goes first.
"""

from fractions import Fraction

from k3twist import (
    K3Surface,
    TwistedPair,
    brauer_from_h2_class,
    dp_identity_check,
    kernel,
    kernel_intersection,
    obstruction_from_bundle,
    p_map,
    topological_twisting_class,
)
from k3twist.lattice import quotient_structure


def h2_class(**entries):
    w = [Fraction(0)] * 22
    for key, val in entries.items():
        w[int(key[1:])] = Fraction(val)
    return w


if __name__ == "__main__":
    X = K3Surface.rank_one(8, "double plane")
    T = X.transcendental
    half_f = brauer_from_h2_class(X, h2_class(i17="1/2"))
    half_e = brauer_from_h2_class(X, h2_class(i16="1/2"))
    print(f"[f/2] has order {half_f.order}; [e/2] has order {half_e.order}")
    print("e/2 = h/2 - 2f is algebraic plus integral, so it is trivial on T_X")

    group, _ = quotient_structure(kernel(half_f), T)
    print(f"T_X / Ker [f/2] = {group}")

    c1 = [0] * 22
    c1[17] = 1
    t = topological_twisting_class(c1, 2)
    print(f"bundle with c1 = f and rank 2: p(t) == [-c1/2] is {p_map(X, t) == obstruction_from_bundle(X, c1, 2)}")

    third = brauer_from_h2_class(X, h2_class(i3="1/3"))
    pair = TwistedPair(T, half_f, third)
    common = kernel_intersection(pair)
    group, _ = quotient_structure(common, T)
    result = dp_identity_check(pair)
    print(f"common kernel of [f/2] and [r/3], r an E8 root, has quotient {group}; identity holds: {result.passed}")
    raise SystemExit(0 if result.passed else 1)
