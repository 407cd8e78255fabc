import math
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qmax.enumeration import enumerate_classes, random_triangulation
from qmax.families import fan, near_fan, star
from qmax.graph import CycleGraph, GeneralGraph, add_edge, degrees, max_degree, signless_laplacian
from qmax.spectral import (ConvergenceError, DisconnectedGraphError, full_spectrum,
                           jacobi_eigenvalues, power_iteration, qindex, quadratic_form, rayleigh)

K3 = GeneralGraph(3, frozenset({(0, 1), (0, 2), (1, 2)}))


def test_star_q():
    assert qindex(star(6)).q == pytest.approx(6.0, abs=1e-9)


@pytest.mark.parametrize("n", range(3, 12))
def test_cycle_q(n):
    assert qindex(CycleGraph(n)).q == pytest.approx(4.0, abs=1e-9)


def test_paper_values():
    assert qindex(fan(8)).q == pytest.approx(8.6925, abs=1e-3)
    assert qindex(near_fan(6, 3)).q == pytest.approx(6.8284, abs=1e-3)


def test_perron_result_invariants():
    for _, g in enumerate_classes(8):
        r = qindex(g)
        assert np.linalg.norm(r.x) == pytest.approx(1.0, abs=1e-12)
        assert r.residual < math.sqrt(1e-10)
        assert r.q >= 2 * min(degrees(g)) - 1e-12
        assert np.all(r.x > 1e-12)


def test_disconnected_rejected():
    with pytest.raises(DisconnectedGraphError):
        qindex(GeneralGraph(4, frozenset({(0, 1), (2, 3)})))


def test_single_vertex():
    assert qindex(GeneralGraph(1)).q == 0.0


def test_iteration_cap():
    with pytest.raises(ConvergenceError) as ei:
        qindex(fan(12), max_iter=2)
    assert ei.value.last.iterations == 2


def test_full_spectrum_small():
    assert full_spectrum(GeneralGraph(2, frozenset({(0, 1)}))) == pytest.approx([2, 0], abs=1e-12)
    circ = sorted((2 + 2 * math.cos(2 * math.pi * k / 4) for k in range(4)), reverse=True)
    assert full_spectrum(CycleGraph(4)) == pytest.approx(circ, abs=1e-12)


def test_full_spectrum_trace():
    g = fan(9)
    assert sum(full_spectrum(g)) == pytest.approx(2 * g.m, abs=1e-10)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 12), st.integers(0, 10**6))
def test_jacobi_against_lapack(n, seed):
    rng = np.random.default_rng(seed)
    M = rng.normal(size=(n, n))
    A = M + M.T
    assert jacobi_eigenvalues(A) == pytest.approx(np.sort(np.linalg.eigvalsh(A))[::-1], abs=1e-10)


def test_two_solvers_on_random_graphs():
    rng = random.Random(2)
    for _ in range(200):
        g = random_triangulation(rng.randint(4, 14), rng)
        assert abs(qindex(g).q - max(full_spectrum(g))) < 1e-8


def test_rayleigh_examples():
    assert rayleigh(K3, np.ones(3)) == pytest.approx(4.0, abs=1e-12)
    assert rayleigh(fan(6), np.ones(6)) == pytest.approx(6.0, abs=1e-12)
    r = qindex(fan(10))
    assert rayleigh(fan(10), r.x) == pytest.approx(r.q, abs=1e-9)
    with pytest.raises(ValueError):
        rayleigh(K3, np.zeros(3))


def test_power_iteration_bad_tol():
    with pytest.raises(ValueError):
        power_iteration(np.eye(2), tol=0)


@settings(max_examples=50, deadline=None)
@given(st.integers(4, 14), st.integers(0, 10**6))
def test_rayleigh_bounded_by_q(n, seed):
    g = random_triangulation(n, random.Random(seed))
    q = qindex(g).q
    rng = np.random.default_rng(seed)
    for _ in range(100):
        x = rng.normal(size=n)
        assert rayleigh(g, x) <= q + 1e-10
        assert quadratic_form(g, x) == pytest.approx(x @ signless_laplacian(g) @ x, rel=1e-12, abs=1e-12)


def test_edge_monotonicity_and_star_bound():
    rng = random.Random(4)
    for _ in range(100):
        n = rng.randint(4, 12)
        g = random_triangulation(n, rng)
        h = GeneralGraph(n, g.edges)
        for _ in range(3):
            h = GeneralGraph(n, frozenset(list(h.edges)[1:]))  # drop edges to make room
        non = [(a, b) for a in range(n) for b in range(a + 1, n) if (a, b) not in h.edges]
        e = rng.choice(non)
        try:
            q0 = qindex(h).q
        except DisconnectedGraphError:
            continue
        assert qindex(add_edge(h, e)).q > q0 + 1e-9
        assert q0 >= max_degree(h) + 1 - 1e-9
