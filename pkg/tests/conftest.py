"""Shared fixtures: the heavy Monte Carlo runs are session-scoped so the
module tests and the acceptance suite reuse one simulation each."""

import math
import os

import pytest

from brownhull import montecarlo as mc
from brownhull.geometry import (ConvexPolygon, edge_normal_angles,
                                support_derivative, support_function)
from brownhull.process_sim import EnsembleSpec
from brownhull.quadrature import QuadSpec, integrate

WORKERS = min(4, os.cpu_count() or 1)


@pytest.fixture(scope="session")
def workers():
    return WORKERS


@pytest.fixture(scope="session")
def combined_hull_run():
    # Criterion-7 scale: m=1, n=1, steps=8192, 50k replicates.
    spec = EnsembleSpec(1, 1, 8192, 42)
    return spec, mc.hull_functional_samples(spec, 50_000, workers=WORKERS)


@pytest.fixture(scope="session")
def bm_hull_run():
    spec = EnsembleSpec(1, 0, 8192, 43)
    return spec, mc.hull_functional_samples(spec, 50_000, workers=WORKERS)


@pytest.fixture(scope="session")
def bb_hull_run():
    spec = EnsembleSpec(0, 1, 8192, 44)
    return spec, mc.hull_functional_samples(spec, 50_000, workers=WORKERS)


@pytest.fixture(scope="session")
def combined_argmax_4096():
    # Criterion-8 scale: steps=4096, 100k replicates.
    spec = EnsembleSpec(1, 1, 4096, 42)
    return spec, mc.argmax_samples(spec, 100_000, workers=WORKERS)


@pytest.fixture(scope="session")
def combined_argmax_8192():
    spec = EnsembleSpec(1, 1, 8192, 42)
    return spec, mc.argmax_samples(spec, 50_000, workers=WORKERS)


@pytest.fixture(scope="session")
def bm_argmax_4096():
    spec = EnsembleSpec(1, 0, 4096, 5)
    return spec, mc.argmax_samples(spec, 100_000, workers=WORKERS)


@pytest.fixture(scope="session")
def bb_argmax_4096():
    spec = EnsembleSpec(0, 1, 4096, 6)
    return spec, mc.argmax_samples(spec, 100_000, workers=WORKERS)


def cauchy_perimeter(poly: ConvexPolygon, tol: float = 1e-10) -> float:
    """Quadrature of the support function over [0, 2 pi), split at the
    edge-normal angles where its derivative kinks."""
    total = 0.0
    for a, b in _sectors(poly):
        total += integrate(lambda th: support_function(poly, th),
                           a, b, QuadSpec(tol=tol)).value
    return total


def cauchy_area(poly: ConvexPolygon, tol: float = 1e-10) -> float:
    """Half the integral of M^2 - M'^2 over [0, 2 pi), sector by sector;
    M' comes from the analytic active-vertex formula."""
    total = 0.0
    for a, b in _sectors(poly):
        def f(th):
            m = support_function(poly, th)
            mp = support_derivative(poly, th)
            return m * m - mp * mp
        total += integrate(f, a, b, QuadSpec(tol=tol)).value
    return 0.5 * total


def _sectors(poly: ConvexPolygon):
    angles = edge_normal_angles(poly)
    if angles.size == 0:
        return [(0.0, 2.0 * math.pi)]
    pairs = []
    for i in range(angles.size - 1):
        if angles[i + 1] > angles[i]:
            pairs.append((float(angles[i]), float(angles[i + 1])))
    pairs.append((float(angles[-1]), float(angles[0]) + 2.0 * math.pi))
    return pairs
