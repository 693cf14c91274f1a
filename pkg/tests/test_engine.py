import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import graphs
from oracles import shortest_by_deepening, state_graph
from ddisr.engine import (
    BUDGET_ENV,
    BudgetExceeded,
    default_budget,
    kernel,
    mask_of,
    reachable_sets,
    reconf_graph_stats,
    rigid_oracle,
    solve_exact,
    tokens_of,
)
from ddisr.graph import Graph, graph_power
from ddisr.instance import DdisInstance, Rule, enumerate_ddis, validate_sequence
from ddisr.rigidity import fig7_instance


def path(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


@st.composite
def instances(draw, max_n=7, rules=tuple(Rule), ds=(2, 3, 4)):
    g = draw(graphs(min_n=1, max_n=max_n))
    d = draw(st.sampled_from(ds))
    k = draw(st.integers(1, 3))
    sets = list(enumerate_ddis(g, d, k))
    assume(sets)
    a = draw(st.sampled_from(sets))
    b = draw(st.sampled_from(sets))
    return DdisInstance(g, d, draw(st.sampled_from(rules)), a, b)


def test_bitmask_round_trip():
    assert tokens_of(mask_of([5, 0, 3])) == (0, 3, 5)
    assert tokens_of(0) == ()


def test_move_order_is_tokens_then_destinations():
    k = kernel(path(5), 2)
    moves = [(x, y) for x, y, _ in k.moves(mask_of([0, 4]), Rule.TJ)]
    assert moves == [(0, 1), (0, 2), (4, 2), (4, 3)]


class TestSolveExact:
    def test_trivial_yes(self):
        inst = DdisInstance(path(3), 2, Rule.TS, [0], [0])
        v = solve_exact(inst)
        assert v.reachable and len(v.witness) == 0

    def test_single_token_slides_along_path(self):
        inst = DdisInstance(path(4), 2, Rule.TS, [0], [3])
        v = solve_exact(inst)
        assert v.reachable and v.witness.pairs() == [(0, 1), (1, 2), (2, 3)]

    def test_size_mismatch_is_no(self):
        inst = DdisInstance(path(4), 3, Rule.TJ, [0], [0, 3])
        assert not solve_exact(inst).reachable

    def test_fig7_is_no(self):
        for d in (3, 4, 5):
            assert not solve_exact(fig7_instance(d)).reachable

    @settings(max_examples=150)
    @given(instances())
    def test_matches_definitional_state_graph(self, inst):
        sg = state_graph(inst.graph.n, inst.graph.edges(), inst.d, inst.k, inst.rule.value)
        assume(len(sg) <= 200)
        v = solve_exact(inst)
        length = shortest_by_deepening(sg, inst.source, inst.target, limit=len(sg))
        assert v.reachable == (length is not None)
        if v.reachable:
            assert validate_sequence(inst, v.witness) is None
            assert len(v.witness) == length

    @given(instances(rules=(Rule.TS,)))
    def test_sliding_reachable_implies_jumping_reachable(self, inst):
        if solve_exact(inst, want_witness=False).reachable:
            assert solve_exact(inst.with_rule(Rule.TJ), want_witness=False).reachable

    @settings(max_examples=80)
    @given(instances(max_n=8, rules=(Rule.TJ,), ds=(3, 4, 5)))
    def test_jumping_equals_plain_isr_on_the_power(self, inst):
        power = DdisInstance(graph_power(inst.graph, inst.d - 1), 2, Rule.TJ, inst.source, inst.target)
        assert solve_exact(inst).reachable == solve_exact(power).reachable

    @given(instances())
    def test_deterministic(self, inst):
        assert solve_exact(inst) == solve_exact(inst)

    def test_budget_is_an_error_not_a_no(self):
        g = Graph.from_edges(12, [])
        inst = DdisInstance(g, 2, Rule.TJ, [0, 1, 2], [9, 10, 11])
        with pytest.raises(BudgetExceeded) as exc:
            solve_exact(inst, state_budget=10)
        assert exc.value.states_explored > 10

    def test_budget_from_environment(self, monkeypatch):
        monkeypatch.setenv(BUDGET_ENV, "7")
        assert default_budget() == 7
        inst = DdisInstance(Graph.from_edges(12, []), 2, Rule.TJ, [0, 1], [10, 11])
        with pytest.raises(BudgetExceeded):
            solve_exact(inst)


class TestReachableAndStats:
    def test_path_tj_three_states(self):
        st_ = reconf_graph_stats(path(5), 3, 2, Rule.TJ)
        assert st_.state_count == 3 and st_.component_count == 1

    def test_complete_graph_has_no_pairs(self):
        k4 = Graph.from_edges(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])
        assert reconf_graph_stats(k4, 2, 2, Rule.TS).state_count == 0

    def test_fig7_sides_in_different_components(self):
        inst = fig7_instance(3)
        st_ = reconf_graph_stats(inst.graph, 3, 2, Rule.TS)
        assert not st_.same_component(inst.source, inst.target)

    @given(instances())
    def test_stats_agree_with_state_graph(self, inst):
        sg = state_graph(inst.graph.n, inst.graph.edges(), inst.d, inst.k, inst.rule.value)
        st_ = reconf_graph_stats(inst.graph, inst.d, inst.k, inst.rule)
        assert st_.state_count == len(sg)
        assert st_.edge_count == sum(len(v) for v in sg.values()) // 2
        reach = reachable_sets(inst.graph, inst.d, inst.rule, inst.source)
        assert reach == {s for s in sg if st_.same_component(s, inst.source)}


class TestRigidOracle:
    def test_single_vertex(self):
        assert rigid_oracle(Graph.from_edges(1, []), [0], 3) == {0}

    def test_star_leaves_stuck(self):
        star = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
        assert rigid_oracle(star, [1, 2, 3], 2) == {1, 2, 3}

    def test_lone_token_on_edge_moves(self):
        assert rigid_oracle(path(2), [0], 3) == set()
