import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from blockgraphs import (
    Graph,
    GraphError,
    block_decomposition,
    build_central,
    build_extremal,
    canonical_code,
    check_automorphism,
    complete_graph,
    cycle_graph,
    from_edge_list,
    is_block_graph,
    is_isomorphic,
    parse_block_spec,
    parse_edge_list,
    path_graph,
    permutation_matrix,
    read_edge_list,
    spectral_radius,
    star_graph,
    to_dot,
    write_edge_list,
)
from blockgraphs.census import block_graph_classes
from blockgraphs.graph import format_edge_list

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def figure_one():
    # two K4 sharing a cut vertex, two triangles and two pendant edges
    edges = []
    edges += itertools.combinations([0, 1, 2, 3], 2)
    edges += itertools.combinations([3, 4, 5, 6], 2)
    edges += itertools.combinations([1, 7, 8], 2)
    edges += itertools.combinations([6, 9, 10], 2)
    edges += [(0, 11), (5, 12)]
    return from_edge_list(13, edges)


class TestConstruction:
    def test_triangle(self):
        g = from_edge_list(3, [(0, 1), (0, 2), (1, 2)])
        assert g == complete_graph(3)
        assert g.m == 3 and g.n == 3

    def test_duplicate_edge_rejected(self):
        with pytest.raises(GraphError, match="duplicate"):
            from_edge_list(3, [(0, 1), (0, 1)])

    def test_reversed_duplicate_rejected(self):
        with pytest.raises(GraphError, match="duplicate"):
            from_edge_list(3, [(0, 1), (1, 0)])

    def test_disconnected_allowed(self):
        g = from_edge_list(4, [(0, 1), (2, 3)])
        assert not g.is_connected

    @pytest.mark.parametrize("edges", [[(0, 3)], [(-1, 0)], [(1, 1)]])
    def test_bad_endpoints(self, edges):
        with pytest.raises(GraphError):
            from_edge_list(3, edges)

    def test_relabel_preserves_structure(self):
        g = path_graph(4)
        h = g.relabel([3, 2, 1, 0])
        assert h.edges == g.edges


class TestBlocks:
    def test_triangle_with_tail(self):
        dec = block_decomposition(from_edge_list(4, [(0, 1), (0, 2), (1, 2), (2, 3)]))
        assert sorted(map(sorted, dec.blocks)) == [[0, 1, 2], [2, 3]]
        assert dec.cut_vertices == {2}
        assert all(dec.pendant)

    def test_path(self):
        dec = block_decomposition(path_graph(4))
        assert sorted(map(sorted, dec.blocks)) == [[0, 1], [1, 2], [2, 3]]
        assert dec.cut_vertices == {1, 2}
        flags = {tuple(sorted(b)): dec.pendant[i] for i, b in enumerate(dec.blocks)}
        assert flags == {(0, 1): True, (1, 2): False, (2, 3): True}

    def test_complete(self):
        dec = block_decomposition(complete_graph(5))
        assert len(dec.blocks) == 1 and not dec.cut_vertices

    def test_single_vertex(self):
        dec = block_decomposition(Graph(1))
        assert list(dec.blocks) == [frozenset({0})]

    def test_disconnected_rejected(self):
        with pytest.raises(GraphError):
            block_decomposition(from_edge_list(4, [(0, 1), (2, 3)]))

    def test_figure_one_is_block_graph(self):
        g = figure_one()
        assert is_block_graph(g)
        assert block_decomposition(g).block_sizes() == [2, 2, 3, 3, 4, 4]

    def test_cycle_is_not_block_graph(self):
        assert not is_block_graph(cycle_graph(4))
        assert is_block_graph(complete_graph(4))

    def test_block_cut_tree_is_a_tree(self):
        dec = block_decomposition(figure_one())
        nodes = len(dec.blocks) + len(dec.cut_vertices)
        links = sum(len(v) for v in dec.tree_blocks)
        assert links == nodes - 1


@settings(max_examples=150, deadline=None)
@given(seeds, st.integers(2, 11))
def test_edge_partition_and_cut_vertices(seed, n):
    rng = random.Random(seed)
    g = from_edge_list(n, oracles.random_connected_edges(rng, n, extra=rng.choice([0.0, 0.1, 0.3])))
    dec = block_decomposition(g)
    seen = []
    for b in dec.blocks:
        seen += [e for e in g.edges if e[0] in b and e[1] in b]
    assert sorted(seen) == sorted(g.edges)
    for v in range(n):
        assert (v in dec.cut_vertices) == oracles.disconnects(g, v)
        assert (v in dec.cut_vertices) == (len(dec.blocks_at(v)) >= 2)
    if len(dec.blocks) >= 2:
        for i, b in enumerate(dec.blocks):
            assert dec.pendant[i] == (len(b & dec.cut_vertices) <= 1)


class TestCanonical:
    def test_bowtie_relabelings(self):
        g = build_central(parse_block_spec("K3^2"))
        code = canonical_code(g)
        rng = random.Random(1)
        for _ in range(20):
            perm = list(range(g.n))
            rng.shuffle(perm)
            assert canonical_code(g.relabel(perm)) == code
            assert canonical_code(g.relabel(perm), method="brute") == canonical_code(g, method="brute")

    def test_star_vs_path(self):
        assert canonical_code(star_graph(3)) != canonical_code(path_graph(4))

    def test_four_vertex_classes(self):
        codes = set()
        for mask in range(1 << 6):
            pairs = list(itertools.combinations(range(4), 2))
            g = Graph(4, frozenset(p for i, p in enumerate(pairs) if mask >> i & 1))
            if g.is_connected and is_block_graph(g):
                codes.add(canonical_code(g))
        assert len(codes) == 4

    def test_generic_cap(self):
        with pytest.raises(GraphError):
            canonical_code(cycle_graph(9), method="brute")

    def test_tree_code_needs_block_graph(self):
        with pytest.raises(GraphError):
            canonical_code(cycle_graph(5), method="tree")

    def test_isomorphism_examples(self):
        g = figure_one()
        assert is_isomorphic(g, g)
        assert not is_isomorphic(complete_graph(3), path_graph(3))
        central = build_central(parse_block_spec("K3 + K4"))
        assert is_isomorphic(build_extremal(6, 4), central)
        assert oracles.brute_isomorphic(build_extremal(6, 4), central)

    @pytest.mark.parametrize("k", range(1, 8))
    def test_code_equality_matches_brute_force(self, k):
        reps = list(block_graph_classes(k).values())
        for a, b in itertools.combinations(reps, 2):
            assert not oracles.brute_isomorphic(a, b)
        rng = random.Random(k)
        for g in reps:
            perm = list(range(g.n))
            rng.shuffle(perm)
            h = g.relabel(perm)
            assert canonical_code(h) == canonical_code(g)
            assert oracles.brute_isomorphic(g, h)


class TestAutomorphisms:
    def test_identity(self):
        g = figure_one()
        assert check_automorphism(g, list(range(g.n)))

    def test_triangle_swap(self):
        # K3 on {0,1,2} with a pendant edge at 0
        g = from_edge_list(4, [(0, 1), (0, 2), (1, 2), (0, 3)])
        assert check_automorphism(g, [0, 2, 1, 3])

    def test_path_swap_fails(self):
        assert not check_automorphism(path_graph(3), [1, 0, 2])

    def test_size_mismatch(self):
        with pytest.raises(GraphError):
            check_automorphism(path_graph(3), [0, 1])

    def test_commutation(self):
        g = from_edge_list(4, [(0, 1), (0, 2), (1, 2), (0, 3)])
        a = g.adjacency_matrix()
        for perm in itertools.permutations(range(4)):
            p = permutation_matrix(perm)
            assert check_automorphism(g, perm) == np.array_equal(p @ a, a @ p)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_automorphism_transfers_perron_entries(seed):
    rng = random.Random(seed)
    n, edges = oracles.random_block_edges(rng, 9)
    g = from_edge_list(n, edges)
    if n < 2:
        return
    x = spectral_radius(g).perron
    dec = block_decomposition(g)
    # swapping two non-cut vertices of one block is an automorphism
    for b in dec.blocks:
        inner = sorted(b - dec.cut_vertices)
        for u, v in itertools.combinations(inner, 2):
            perm = list(range(n))
            perm[u], perm[v] = v, u
            assert check_automorphism(g, perm)
            assert abs(x[u] - x[v]) < 1e-9


class TestEdgeListFormat:
    def test_round_trip(self, tmp_path):
        g = figure_one()
        path = tmp_path / "g.edges"
        write_edge_list(g, path)
        assert read_edge_list(path) == g
        raw = path.read_bytes()
        assert raw.endswith(b"\n") and b"\r" not in raw
        assert raw.split(b"\n")[0] == f"{g.n} {g.m}".encode()

    @pytest.mark.parametrize(
        "text, fragment",
        [
            ("", "empty"),
            ("3\n", "line 1"),
            ("3 2\n0 1\n", "announces 2"),
            ("3 1\n1 0\n", "u < v"),
            ("3 1\n0 x\n", "non-integer"),
            ("3 1\n0 3\n", "outside"),
        ],
    )
    def test_parse_errors(self, text, fragment):
        with pytest.raises(GraphError, match=fragment):
            parse_edge_list(text)

    def test_dot(self):
        dot = to_dot(path_graph(3), "P3")
        assert dot.startswith("graph P3 {")
        assert "0 -- 1;" in dot and "1 -- 2;" in dot

    def test_format_is_sorted(self):
        assert format_edge_list(from_edge_list(3, [(1, 2), (0, 1)])) == "3 2\n0 1\n1 2\n"
