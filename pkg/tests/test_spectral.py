import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from blockgraphs import (
    ConvergenceError,
    GraphError,
    Ordering,
    block_decomposition,
    build_central,
    compare_spectral_radii,
    complete_graph,
    from_edge_list,
    parse_block_spec,
    path_graph,
    spectral_radius,
    star_graph,
    verify_eigenpair,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def central(text):
    return build_central(parse_block_spec(text))


@pytest.mark.parametrize("n", [2, 3, 7, 20, 50])
def test_complete_graph_radius(n):
    res = spectral_radius(complete_graph(n))
    assert abs(res.rho - (n - 1)) < 1e-10
    assert np.allclose(res.perron, 1 / math.sqrt(n))


def test_path_three():
    res = spectral_radius(path_graph(3))
    assert abs(res.rho - math.sqrt(2)) < 1e-10
    assert abs(res.rho - oracles.rho_by_charpoly(path_graph(3))) < 1e-10


def test_bowtie():
    g = central("K3^2")
    res = spectral_radius(g)
    assert abs(res.rho - (1 + math.sqrt(17)) / 2) < 1e-10
    assert abs(res.rho - oracles.rho_by_charpoly(g)) < 1e-10


@pytest.mark.parametrize("spec", ["K2^3", "K2 + K3", "K3 + K4", "K2 + K3 + K4", "K2^2 + K3"])
def test_against_characteristic_polynomial(spec):
    g = central(spec)
    assert abs(spectral_radius(g).rho - oracles.rho_by_charpoly(g)) < 1e-10


def test_bipartite_converges():
    # bipartite spectra are symmetric; the shift is what makes this converge
    for g in (path_graph(8), star_graph(6)):
        res = spectral_radius(g)
        assert abs(res.rho - oracles.rho_by_charpoly(g)) < 1e-10


def test_result_invariants():
    g = central("K2 + K3^2 + K5")
    res = spectral_radius(g)
    assert abs(np.linalg.norm(res.perron) - 1) < 1e-12
    assert res.residual <= 1e-12 * max(1.0, res.rho) * 10
    assert res.perron.min() > 0


def test_rejects_disconnected_and_trivial():
    with pytest.raises(GraphError):
        spectral_radius(from_edge_list(4, [(0, 1), (2, 3)]))
    with pytest.raises(GraphError):
        spectral_radius(from_edge_list(1, []))


def test_iteration_cap_reported():
    with pytest.raises(ConvergenceError):
        spectral_radius(path_graph(12), tol=1e-12, max_iter=3)


class TestVerifyEigenpair:
    def test_regular(self):
        assert verify_eigenpair(complete_graph(3), 2.0, np.ones(3) / math.sqrt(3))

    def test_not_an_eigenvector(self):
        assert not verify_eigenpair(complete_graph(3), 2.0, np.array([1.0, 0.0, 0.0]))

    def test_mixed_signs(self):
        assert not verify_eigenpair(complete_graph(3), -1.0, np.array([1.0, -1.0, 0.0]))

    def test_computed_pair_and_pendant_structure(self):
        g = central("K3 + K4")
        res = spectral_radius(g)
        assert verify_eigenpair(g, res.rho, res.perron)
        x = res.perron
        assert abs(x[1] - x[2]) < 1e-9
        assert abs(x[3] - x[4]) < 1e-9 and abs(x[4] - x[5]) < 1e-9
        assert x[0] > x[1] + 1e-9 and x[0] > x[3] + 1e-9


class TestCompare:
    def test_relabeled_copy(self):
        g = central("K2 + K3 + K4")
        h = g.relabel([6, 5, 4, 3, 2, 1, 0])
        assert compare_spectral_radii(g, h) is Ordering.INDISTINGUISHABLE

    def test_triangle_clique_beats_two_triangles_and_edge(self):
        a, b = central("K3 + K4"), central("K2 + K3^2")
        assert oracles.rho_by_charpoly(a) > oracles.rho_by_charpoly(b) + 1e-6
        assert compare_spectral_radii(a, b) is Ordering.GREATER
        assert compare_spectral_radii(b, a) is Ordering.LESS

    def test_margin_must_cover_tolerance(self):
        with pytest.raises(ValueError):
            compare_spectral_radii(path_graph(3), path_graph(3), margin=1e-13, tol=1e-12)


@settings(max_examples=120, deadline=None)
@given(seeds, st.integers(2, 12))
def test_bounds_rayleigh_and_monotonicity(seed, n):
    rng = random.Random(seed)
    g = from_edge_list(n, oracles.random_connected_edges(rng, n, extra=rng.random() * 0.5))
    res = spectral_radius(g)
    degs = [g.degree(v) for v in range(n)]
    assert sum(degs) / n - 1e-9 <= res.rho <= max(degs) + 1e-9
    a = g.adjacency_matrix()
    assert abs(res.perron @ a @ res.perron - res.rho) < 1e-11
    missing = [(u, v) for u in range(n) for v in range(u + 1, n) if not g.has_edge(u, v)]
    if missing:
        h = g.add_edges([rng.choice(missing)])
        assert spectral_radius(h).rho - res.rho > 1e-9
        assert compare_spectral_radii(g, h) is Ordering.LESS


@settings(max_examples=80, deadline=None)
@given(seeds)
def test_pendant_clique_perron_structure(seed):
    rng = random.Random(seed)
    n, edges = oracles.random_block_edges(rng, 12, sizes=(2, 3, 4, 5))
    if n < 2:
        return
    g = from_edge_list(n, edges)
    dec = block_decomposition(g)
    x = spectral_radius(g).perron
    if len(dec.blocks) < 2:
        return
    for i, b in enumerate(dec.blocks):
        if not dec.pendant[i] or len(b) < 3:
            continue
        (w1,) = b & dec.cut_vertices
        rest = [x[v] for v in b - {w1}]
        assert max(rest) - min(rest) < 1e-9
        assert x[w1] > max(rest) + 1e-9
