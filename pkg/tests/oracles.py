"""Brute-force reference computations used to cross-check the library.

Nothing here calls into the package's elimination routines; everything is
done by expansion, enumeration or plain modular Gaussian elimination.
"""

from fractions import Fraction
from itertools import combinations, permutations, product
from math import gcd, lcm, prod


def leibniz_det(M):
    """Determinant by the permutation expansion (fine up to 7 x 7)."""
    n = len(M)
    if n == 0:
        return 1
    total = 0
    for p in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        total += (-1) ** inversions * prod(M[i][p[i]] for i in range(n))
    return total


def laplace_det(M):
    """Cofactor expansion along the first row, with a zero-skip."""
    n = len(M)
    if n == 1:
        return M[0][0]
    total = 0
    for j, a in enumerate(M[0]):
        if a:
            minor = [row[:j] + row[j + 1 :] for row in M[1:]]
            total += (-1) ** j * a * laplace_det(minor)
    return total


def determinantal_divisors(M):
    """``d_k`` = gcd of all k x k minors, for k = 1..min(m, n)."""
    m, n = len(M), len(M[0]) if M else 0
    out = []
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                g = gcd(g, leibniz_det([[M[i][j] for j in cols] for i in rows]))
        out.append(g)
    return out


def invariant_factors_oracle(M):
    """Nonzero Smith invariants ``d_k / d_(k-1)``."""
    out, prev = [], 1
    for d in determinantal_divisors(M):
        if d == 0:
            break
        out.append(d // prev)
        prev = d
    return out


def rank_mod_p(vectors, p):
    """Rank over F_p of a list of integer vectors."""
    rows = [[x % p for x in v] for v in vectors]
    rank, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def rational_rank(vectors):
    """Rank over Q by fraction elimination."""
    rows = [[Fraction(x) for x in v] for v in vectors]
    rank, ncols = 0, len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col] / rows[rank][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def eigen_signature(G):
    """Signature from floating-point eigenvalues; fine for small integer forms."""
    import numpy as np

    w = np.linalg.eigvalsh(np.array(G, dtype=float))
    return int((w > 1e-9).sum()), int((w < -1e-9).sum())


def subgroup_closure(gens, moduli):
    """Elements of the subgroup of ``prod Z/moduli`` generated by ``gens``."""
    zero = tuple(0 for _ in moduli)
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple((a + b) % m for a, b, m in zip(x, g, moduli))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def functional_image_size(value_lists):
    """Size of the image of ``Z^r -> (Q/Z)^j``, t -> (alpha_i(t))_i.

    ``value_lists[i][c]`` is the value of the i-th functional on basis vector c.
    """
    dens = [lcm(1, *(Fraction(v).denominator for v in vals)) for vals in value_lists]
    r = len(value_lists[0])
    gens = [
        tuple(int(Fraction(vals[c]) * d) % d for vals, d in zip(value_lists, dens))
        for c in range(r)
    ]
    return len(subgroup_closure(gens, dens))


def enumerate_cohomology_order(coboundary_rows_in, coboundary_rows_out, ck, n):
    """``|ker delta_k| / |im delta_(k-1)|`` over Z/n by enumerating all cochains.

    ``coboundary_rows_*`` are integer matrices (lists of rows) of the two
    differentials around degree k; ``ck`` is the number of k-simplices.
    """
    cycles = 0
    for c in product(range(n), repeat=ck):
        if all(sum(a * b for a, b in zip(row, c)) % n == 0 for row in coboundary_rows_out):
            cycles += 1
    if coboundary_rows_in is None:
        return cycles
    ckm1 = len(coboundary_rows_in[0]) if coboundary_rows_in else 0
    boundaries = set()
    for x in product(range(n), repeat=ckm1):
        boundaries.add(tuple(sum(a * b for a, b in zip(row, x)) % n for row in coboundary_rows_in))
    return cycles // len(boundaries)


def hand_coboundary_1(c, simplices2):
    """``(delta c)(ijk) = c(jk) - c(ik) + c(ij)`` for a dict-valued 1-cochain."""
    return {(i, j, k): c[(j, k)] - c[(i, k)] + c[(i, j)] for i, j, k in simplices2}


def incidence_rows(upper, lower):
    """Signed incidence matrix of ``C^k -> C^(k+1)`` written out from vertex lists."""
    pos = {s: i for i, s in enumerate(lower)}
    rows = []
    for s in upper:
        row = [0] * len(lower)
        for i in range(len(s)):
            row[pos[s[:i] + s[i + 1 :]]] += (-1) ** i
        rows.append(row)
    return rows
