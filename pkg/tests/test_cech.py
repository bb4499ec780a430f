from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from k3twist.cech import (
    Cochain,
    GluingData,
    Nerve,
    cech_cohomology,
    coboundary,
    coboundary_matrix,
    hom_gluing,
    inverse_gluing,
    is_cohomologous,
    tensor_gluing,
    verify_gluing,
)
from k3twist.errors import InvalidInputError
from oracles import enumerate_cohomology_order, hand_coboundary_1, incidence_rows

SPHERE = Nerve.boundary_of_tetrahedron()
SOLID = Nerve.solid_tetrahedron()
# six-vertex triangulation of the real projective plane
RP2 = Nerve.from_maximal(6, [
    (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5),
    (1, 2, 4), (2, 3, 5), (1, 3, 4), (2, 4, 5), (1, 3, 5),
])
CIRCLE = Nerve.from_maximal(3, [(0, 1), (1, 2), (0, 2)])
NERVES = {"sphere": SPHERE, "solid": SOLID, "rp2": RP2, "circle": CIRCLE}


def cochains(nerve, degree, n):
    size = nerve.count(degree)
    if n:
        vals = st.lists(st.integers(0, n - 1), min_size=size, max_size=size)
    else:
        vals = st.lists(st.fractions(min_value=0, max_value=1, max_denominator=12), min_size=size, max_size=size)
    return vals.map(lambda v: Cochain(nerve, degree, n, v))


def test_nerve_validation():
    assert (SPHERE.count(0), SPHERE.count(1), SPHERE.count(2), SPHERE.count(3)) == (4, 6, 4, 0)
    assert SOLID.count(3) == 1
    assert RP2.count(1) == 15 and RP2.count(2) == 10
    with pytest.raises(InvalidInputError):
        Nerve(3, (((0,), (1,), (2,)), ((0, 1), (1, 2)), ((0, 1, 2),)))
    with pytest.raises(InvalidInputError):
        Nerve(2, (((0,), (5,)),))
    with pytest.raises(InvalidInputError):
        Nerve.from_maximal(5, [range(5)])


def test_cochain_reduces_and_checks():
    c = Cochain(CIRCLE, 1, 3, (4, -1, 3))
    assert c.values == (1, 2, 0)
    q = Cochain(CIRCLE, 1, 0, (Fraction(5, 4), Fraction(-1, 3), 2))
    assert q.values == (Fraction(1, 4), Fraction(2, 3), 0)
    with pytest.raises(InvalidInputError):
        Cochain(CIRCLE, 1, 3, (1, 2))
    with pytest.raises(InvalidInputError):
        Cochain(CIRCLE, 1, 3, (0, 0, 0)) + Cochain(CIRCLE, 1, 2, (0, 0, 0))


@pytest.mark.parametrize("name", NERVES)
@pytest.mark.parametrize("n", [0, 2, 5])
def test_coboundary_squares_to_zero(name, n):
    N = NERVES[name]

    @given(cochains(N, 0, n), cochains(N, 1, n))
    def check(c0, c1):
        assert coboundary(coboundary(c0)).is_zero
        assert coboundary(coboundary(c1)).is_zero

    check()


@given(st.lists(st.integers(-9, 9), min_size=6, max_size=6), st.sampled_from([2, 3, 7]))
def test_coboundary_matches_hand_formula(vals, n):
    c = Cochain(SPHERE, 1, n, vals)
    by_hand = hand_coboundary_1(dict(zip(SPHERE.simplices[1], c.values)), SPHERE.simplices[2])
    d = coboundary(c)
    assert all(d.value(s) == v % n for s, v in by_hand.items())


@pytest.mark.parametrize("name", NERVES)
def test_coboundary_matrix_is_incidence(name):
    N = NERVES[name]
    for k in range(3):
        if N.count(k + 1):
            assert coboundary_matrix(N, k).tolist() == incidence_rows(N.simplices[k + 1], N.simplices[k])


def test_known_groups():
    for n in (2, 3, 4, 6):
        assert cech_cohomology(SPHERE, 0, n).invariant_factors == (n,)
        assert cech_cohomology(SPHERE, 1, n).is_trivial
        assert cech_cohomology(SPHERE, 2, n).invariant_factors == (n,)
        assert cech_cohomology(SOLID, 1, n).is_trivial
        assert cech_cohomology(SOLID, 2, n).is_trivial
        assert cech_cohomology(CIRCLE, 1, n).invariant_factors == (n,)
    # torsion in integral H^2 shows up only for even coefficients
    assert cech_cohomology(RP2, 1, 2).invariant_factors == (2,)
    assert cech_cohomology(RP2, 2, 2).invariant_factors == (2,)
    assert cech_cohomology(RP2, 2, 4).invariant_factors == (2,)
    assert cech_cohomology(RP2, 2, 3).is_trivial
    assert cech_cohomology(RP2, 1, 3).is_trivial


def enumerated_order(N, k, n):
    rows_out = incidence_rows(N.simplices[k + 1], N.simplices[k]) if N.count(k + 1) else []
    rows_in = incidence_rows(N.simplices[k], N.simplices[k - 1]) if k else None
    return enumerate_cohomology_order(rows_in, rows_out, N.count(k), n)


@pytest.mark.parametrize("name,k,n", [
    ("sphere", 0, 3), ("sphere", 1, 2), ("sphere", 1, 4), ("sphere", 2, 2), ("sphere", 2, 6),
    ("solid", 1, 3), ("solid", 2, 2), ("circle", 1, 5), ("rp2", 1, 2), ("rp2", 2, 2),
])
def test_group_orders_by_enumeration(name, k, n):
    N = NERVES[name]
    assert cech_cohomology(N, k, n).order == enumerated_order(N, k, n)


def test_cohomology_rejects_bad_arguments():
    with pytest.raises(InvalidInputError):
        cech_cohomology(SPHERE, 3, 2)
    with pytest.raises(InvalidInputError):
        cech_cohomology(SPHERE, 2, 0)


def test_cohomologous_examples():
    a = Cochain(SPHERE, 2, 2, (1, 0, 0, 0))
    z = Cochain.zero(SPHERE, 2, 2)
    assert not is_cohomologous(a, z)
    b = Cochain(SPHERE, 2, 2, (0, 1, 0, 0))
    t = is_cohomologous(a, b)
    assert t and coboundary(t.witness) == a - b
    # on the solid tetrahedron every 2-cocycle bounds
    c = coboundary(Cochain(SOLID, 1, 5, (1, 2, 3, 4, 0, 1)))
    assert is_cohomologous(c, Cochain.zero(SOLID, 2, 5))


def test_cohomologous_in_degree_zero():
    a = Cochain(CIRCLE, 0, 4, (1, 1, 1))
    assert is_cohomologous(a, a)
    assert not is_cohomologous(a, Cochain.zero(CIRCLE, 0, 4))


def test_cohomologous_rejects_non_cocycles():
    c = Cochain(SOLID, 2, 2, (1, 0, 0, 0))
    with pytest.raises(InvalidInputError):
        is_cohomologous(c, Cochain.zero(SOLID, 2, 2))
    with pytest.raises(InvalidInputError):
        coboundary(Cochain.zero(SOLID, 3, 2))


def sphere_total(c):
    # evaluation on the fundamental cycle; simplices are sorted, so signs alternate
    return sum(c.values[i] * (-1) ** i for i in range(4))


@given(cochains(SPHERE, 1, 0), cochains(SPHERE, 2, 0))
def test_rational_coefficients(x, a):
    b = a + coboundary(x)
    t = is_cohomologous(a, b)
    assert t and coboundary(t.witness) == a - b
    shifted = Cochain(SPHERE, 2, 0, (a.values[0] + Fraction(1, 7), *a.values[1:]))
    assert not is_cohomologous(a, shifted)


@pytest.mark.parametrize("n", [2, 3, 4, 6])
@given(data=st.data())
def test_sphere_classes_are_detected_by_total(n, data):
    a = data.draw(cochains(SPHERE, 2, n))
    b = data.draw(cochains(SPHERE, 2, n))
    t = is_cohomologous(a, b)
    assert bool(t) == ((sphere_total(a) - sphere_total(b)) % n == 0)
    if t:
        assert coboundary(t.witness) == a - b


@given(cochains(RP2, 2, 2), cochains(RP2, 2, 2))
def test_rp2_classes_are_detected_by_parity(a, b):
    # H^2(RP2, Z/2) = Z/2 is detected by the sum of all triangle values
    t = is_cohomologous(a, b)
    assert bool(t) == (sum(a.values) % 2 == sum(b.values) % 2)


def gluing(N, n, lam):
    lam = Cochain(N, 1, n, lam)
    return GluingData(lam, coboundary(lam))


@given(st.lists(st.integers(0, 5), min_size=6, max_size=6), st.lists(st.integers(0, 5), min_size=4, max_size=4))
def test_gluing_verifies_iff_twist_is_coboundary(lam, alpha):
    lam_c = Cochain(SPHERE, 1, 6, lam)
    alpha_c = Cochain(SPHERE, 2, 6, alpha)
    assert verify_gluing(GluingData(lam_c, alpha_c)) == (coboundary(lam_c) == alpha_c)


def test_gluing_conditions_by_hand():
    g = gluing(SPHERE, 5, (1, 2, 3, 4, 0, 1))
    assert g.transition(0, 0) == 0
    assert g.transition(1, 0) == (-g.transition(0, 1)) % 5
    for i, j, k in combinations(range(4), 3):
        cyc = (g.transition(i, j) + g.transition(j, k) + g.transition(k, i)) % 5
        assert cyc == g.twist.value((i, j, k))


@given(st.lists(st.integers(0, 3), min_size=6, max_size=6), st.lists(st.integers(0, 3), min_size=6, max_size=6))
def test_gluing_operations(l1, l2):
    g, h = gluing(SPHERE, 4, l1), gluing(SPHERE, 4, l2)
    gh = tensor_gluing(g, h)
    assert verify_gluing(gh)
    assert gh.twist == g.twist + h.twist
    assert tensor_gluing(g, inverse_gluing(g)).twist.is_zero
    hom = hom_gluing(g, h)
    assert verify_gluing(hom)
    assert hom.twist == h.twist - g.twist
    assert tensor_gluing(g, h).transitions == tensor_gluing(h, g).transitions


def test_gluing_rejects_mismatched_data():
    with pytest.raises(InvalidInputError):
        GluingData(Cochain.zero(SPHERE, 2, 2), Cochain.zero(SPHERE, 2, 2))
    with pytest.raises(InvalidInputError):
        GluingData(Cochain.zero(SPHERE, 1, 2), Cochain.zero(SPHERE, 2, 3))
    with pytest.raises(InvalidInputError):
        tensor_gluing(gluing(SPHERE, 2, (0,) * 6), gluing(SOLID, 2, (0,) * 6))
