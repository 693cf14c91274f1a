import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import graphs, trees
from oracles import floyd, has_long_chordless_cycle, split_brute
from ddisr.graph import (
    INF,
    Graph,
    GraphError,
    ball,
    component_diameters,
    components,
    distance_matrix,
    distances_from,
    graph_power,
    is_chordal,
    is_perfect_elimination_ordering,
    is_split,
    is_tree,
    max_component_diameter,
    mcs_order,
    s_neighborhood,
    split_partition,
)
from ddisr.generators import all_trees, random_split_graph, tree_canonical_form


def path(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n):
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


FIG3 = Graph.from_edges(5, [(0, 1), (1, 2), (2, 4), (0, 3), (3, 1)])


class TestConstruction:
    def test_rejects_self_loop(self):
        with pytest.raises(GraphError):
            Graph.from_edges(3, [(1, 1)])

    def test_rejects_duplicate_in_strict_mode(self):
        with pytest.raises(GraphError):
            Graph.from_edges(3, [(0, 1), (1, 0)])

    def test_rejects_out_of_range(self):
        with pytest.raises(GraphError):
            Graph.from_edges(2, [(0, 2)])

    def test_adjacency_sorted(self):
        g = Graph.from_edges(4, [(0, 3), (0, 1), (0, 2)])
        assert g.neighbors(0) == (1, 2, 3)
        assert g.edges() == [(0, 1), (0, 2), (0, 3)]
        assert g.edge_count == 3 and g.max_degree() == 3


class TestDistances:
    def test_path_distances(self):
        assert distances_from(path(4), 0) == [0, 1, 2, 3]

    def test_disconnected_is_infinite(self):
        g = Graph.from_edges(3, [(0, 1)])
        assert distances_from(g, 0)[2] == INF
        assert math.isinf(INF)

    def test_bad_vertex(self):
        with pytest.raises(GraphError):
            distances_from(path(3), 5)

    @given(graphs(max_n=9))
    def test_matrix_matches_floyd(self, g):
        assert distance_matrix(g) == floyd(g.n, g.edges())

    @given(graphs(min_n=1, max_n=9), st.integers(0, 4))
    def test_ball_and_neighborhood(self, g, r):
        dist = floyd(g.n, g.edges())
        b = ball(g, 0, r)
        assert set(b) == {v for v in range(g.n) if dist[0][v] <= r}
        assert all(b[v] == dist[0][v] for v in b)
        assert s_neighborhood(g, 0, r) == {v for v in b if dist[0][v] == r}

    def test_triangle_inequality_exact_with_infinity(self):
        g = Graph.from_edges(4, [(0, 1), (2, 3)])
        m = distance_matrix(g)
        for a in range(4):
            for b in range(4):
                for c in range(4):
                    assert m[a][c] <= m[a][b] + m[b][c]


class TestPower:
    def test_path_cubed_is_complete(self):
        assert graph_power(path(4), 3).edges() == complete(4).edges()

    def test_power_one_is_identity(self):
        assert graph_power(FIG3, 1) == FIG3

    @settings(max_examples=80)
    @given(graphs(max_n=10), st.integers(1, 5))
    def test_power_matches_all_pairs(self, g, s):
        dist = floyd(g.n, g.edges())
        p = graph_power(g, s)
        for u in range(g.n):
            for v in range(u + 1, g.n):
                assert p.has_edge(u, v) == (1 <= dist[u][v] <= s)

    @given(graphs(max_n=8))
    def test_power_at_diameter_gives_cliques(self, g):
        s = max(1, max_component_diameter(g))
        p = graph_power(g, s)
        for comp in components(g):
            assert all(p.has_edge(a, b) for i, a in enumerate(comp) for b in comp[i + 1:])


class TestComponents:
    def test_empty(self):
        assert components(Graph.from_edges(0, [])) == []

    def test_two_edges(self):
        assert components(Graph.from_edges(4, [(0, 2), (1, 3)])) == [[0, 2], [1, 3]]

    def test_fig3_connected(self):
        assert len(components(FIG3)) == 1

    def test_diameters(self):
        assert component_diameters(complete(3)) == [1]
        assert component_diameters(path(4)) == [3]
        assert component_diameters(Graph.from_edges(1, [])) == [0]

    @given(graphs(max_n=9))
    def test_partition_and_finiteness(self, g):
        comps = components(g)
        flat = sorted(v for c in comps for v in c)
        assert flat == list(range(g.n))
        where = {v: i for i, c in enumerate(comps) for v in c}
        dist = distance_matrix(g)
        for u in range(g.n):
            for v in range(g.n):
                assert (dist[u][v] != INF) == (where[u] == where[v])

    def test_split_components_have_small_diameter(self):
        rng = random.Random(5)
        for _ in range(200):
            g = random_split_graph(rng.randint(1, 9), rng)
            assert max_component_diameter(g) <= 3


class TestChordalSplitTree:
    def test_small_cases(self):
        assert not is_chordal(cycle(4))
        assert is_chordal(cycle(3))
        assert is_chordal(path(6))
        k3_pendant = Graph.from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
        assert is_split(k3_pendant)
        assert not is_split(cycle(5))
        assert is_tree(Graph.from_edges(1, []))
        assert not is_tree(cycle(3))

    @settings(max_examples=120)
    @given(graphs(max_n=7))
    def test_chordal_matches_cycle_search(self, g):
        assert is_chordal(g) == (not has_long_chordless_cycle(g.n, g.edges()))

    @given(graphs(max_n=8))
    def test_mcs_gives_peo_iff_chordal(self, g):
        assert is_perfect_elimination_ordering(g, mcs_order(g)[::-1]) == is_chordal(g)

    @settings(max_examples=120)
    @given(graphs(max_n=8))
    def test_split_matches_brute_force(self, g):
        assert is_split(g) == split_brute(g.n, g.edges())
        part = split_partition(g)
        if part is not None:
            clique, indep = part
            assert sorted(clique + indep) == list(range(g.n))
            assert all(g.has_edge(a, b) for i, a in enumerate(clique) for b in clique[i + 1:])
            assert not any(g.has_edge(a, b) for i, a in enumerate(indep) for b in indep[i + 1:])

    @given(trees(max_n=12))
    def test_trees_are_trees_and_chordal(self, t):
        assert is_tree(t) and is_chordal(t)

    @given(graphs(max_n=8))
    def test_is_tree_definition(self, g):
        expected = g.n >= 1 and len(components(g)) == 1 and g.edge_count == g.n - 1
        assert is_tree(g) == expected


def test_tree_counts_match_known_sequence():
    # unlabelled trees on n vertices, OEIS A000055
    assert [len(all_trees(n)) for n in range(1, 11)] == [1, 1, 1, 2, 3, 6, 11, 23, 47, 106]


@given(trees(max_n=9), st.randoms(use_true_random=False))
def test_canonical_form_is_label_invariant(t, rnd):
    perm = list(range(t.n))
    rnd.shuffle(perm)
    relabelled = Graph.from_edges(t.n, [(perm[u], perm[v]) for u, v in t.edges()])
    assert tree_canonical_form(t) == tree_canonical_form(relabelled)
