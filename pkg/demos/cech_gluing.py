"""Rank-one twisted gluing on small nerves.

A twisted line bundle on a cover is a 1-cochain of transition values whose
coboundary is the prescribed 2-cocycle. On the boundary of a tetrahedron
(a sphere) the second cohomology with Z/n coefficients is Z/n, so some
twists admit no gluing; on the solid tetrahedron every twist bounds.
"""

from k3twist import Cochain, GluingData, Nerve, cech_cohomology, coboundary, is_cohomologous, verify_gluing
from k3twist.cech import hom_gluing, tensor_gluing

if __name__ == "__main__":
    n = 3
    sphere, solid = Nerve.boundary_of_tetrahedron(), Nerve.solid_tetrahedron()
    for name, N in (("sphere", sphere), ("solid tetrahedron", solid)):
        groups = ", ".join(f"H^{k} = {cech_cohomology(N, k, n)}" for k in range(3))
        print(f"{name} with Z/{n} coefficients: {groups}")

    twist = Cochain(sphere, 2, n, (1, 0, 0, 0))
    test = is_cohomologous(twist, Cochain.zero(sphere, 2, n))
    print(f"on the sphere, the twist with a single 1 bounds: {test.cohomologous}")

    lam = Cochain(sphere, 1, n, (1, 2, 0, 1, 1, 2))
    g = GluingData(lam, coboundary(lam))
    print(f"gluing with twist = delta(lambda) verifies: {verify_gluing(g)}")
    print(f"same transitions with a different twist verifies: {verify_gluing(GluingData(lam, twist))}")

    lam2 = Cochain(sphere, 1, n, (0, 1, 1, 2, 0, 0))
    h = GluingData(lam2, coboundary(lam2))
    print(f"tensor product twist is the sum: {tensor_gluing(g, h).twist == g.twist + h.twist}")
    print(f"Hom twist is the difference: {hom_gluing(g, h).twist == h.twist - g.twist}")

    solid_twist = Cochain(solid, 2, n, coboundary(Cochain(solid, 1, n, (1, 0, 2, 0, 1, 1))).values)
    w = is_cohomologous(solid_twist, Cochain.zero(solid, 2, n)).witness
    print(f"on the solid tetrahedron a twist is solved by transitions {w.values}")
