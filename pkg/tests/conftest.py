import os
import sys
from math import gcd
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from k3twist import K3Surface, MukaiVector

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("ci", max_examples=200, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def admissible_vectors(k, r_range=range(0, 5), s_range=range(-6, 7), m_range=range(-3, 4)):
    """Small admissible ``v = (r, m h, s)`` on the rank-one surface of degree 2k.

    Algebraic by construction; primitive iff gcd(r, m, s) = 1 because h is
    primitive; isotropic iff 2k m^2 = 2 r s.
    """
    out = []
    for r in r_range:
        for s in s_range:
            for m in m_range:
                if gcd(gcd(r, s), m) == 1 and m * m * k == r * s:
                    out.append((r, m, s))
    return out


def searched_problems(k_max=12, with_negatives=True):
    """Every ``(k, (r, m, s))`` found by the search, plus ``-v`` when r > 0."""
    probs = []
    for k in range(1, k_max + 1):
        for r, m, s in admissible_vectors(k):
            probs.append((k, (r, m, s)))
            if with_negatives and r:
                probs.append((k, (-r, -m, -s)))
    return probs


def mukai_on(X, r, m, s):
    h = X.ns.vectors[0]
    return MukaiVector(r, tuple(m * x for x in h), s)


def h2(**entries):
    """22-vector with the given {index: value} entries, e.g. h2(i16=1, i17=4)."""
    v = [0] * 22
    for key, val in entries.items():
        v[int(key[1:])] = val
    return tuple(v)


@pytest.fixture(scope="session")
def deg4():
    return K3Surface.rank_one(4)


@pytest.fixture(scope="session")
def deg8():
    return K3Surface.rank_one(8)


DATA_DIR = Path(__file__).resolve().parent.parent / "data"

# data file -> (subcommand, expected exit code)
CORPUS = {
    "quartic_fine.json": ("analyze-moduli", 0),
    "double_plane_nonfine.json": ("analyze-moduli", 0),
    "moduli_batch.json": ("analyze-moduli", 0),
    "quartic_not_isotropic.json": ("analyze-moduli", 1),
    "brauer_order.json": ("brauer-order", 0),
    "brauer_kernel.json": ("brauer-kernel", 0),
    "dp_check.json": ("dp-check", 0),
    "cech_sphere.json": ("cech-h2", 0),
    "cech_solid.json": ("cech-h2", 0),
    "twist_class.json": ("twist-class", 0),
}


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "CRITERION_LINES", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda l: int(l.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
