"""
Tests for construct: L and M gluings, extremal assemblies, tightness and pendant graphs
"""
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import cached_profile, small_graphs
from construct import (build_elementary_extremal, build_ideal_extremal, build_ip_realization,
                       build_L, build_M, build_pendant_clique, build_tightness,
                       elementary_partitions, gluing_plan, two_lowest_degree_gap)
from errors import ContractError, GraphArgumentError, InfeasibleError
from graph_core import (are_isomorphic, clique_with_pendant, complete_graph, count_cliques,
                        cycle_graph, named_graph)
from ip_core import closed_form_clique, multiset, solve_ip
from oracle import is_covered


# ---------------------------------------------------------------------------
# Gluings

def test_gluing_plan_shares_densest_set():
    p = cached_profile(cycle_graph(5), 2)
    plan = gluing_plan(cycle_graph(5), 2, p)
    assert plan.shared == p.witness_e[3]
    assert plan.r == 2 and len(plan.private) == 2


def test_build_L_cycle():
    h = cycle_graph(5)
    g = build_L(h, 2, 2, cached_profile(h, 2))
    assert (g.n, g.edge_count()) == (7, 8)
    assert is_covered(g, h)


def test_build_L_remainder_zero_is_h():
    h = named_graph("K4+pendant")
    assert build_L(h, 2, 0, cached_profile(h, 2)) == h


def test_build_L_errors():
    h = cycle_graph(5)
    with pytest.raises(GraphArgumentError):
        build_L(h, 2, 5, cached_profile(h, 2))
    with pytest.raises(ContractError):
        build_L(h, 3, 2, cached_profile(h, 2))
    with pytest.raises(ContractError):
        build_L(h, 2, 2, cached_profile(cycle_graph(6), 2))


@settings(max_examples=30, deadline=None)
@given(small_graphs(min_n=2, max_n=6), st.integers(2, 3), st.data())
def test_L_count_is_a_n_plus_a_r(h, t, data):
    p = cached_profile(h, t)
    r = data.draw(st.integers(0, h.n - 1))
    g = build_L(h, t, r, p)
    assert g.n == h.n + r
    assert count_cliques(g, t) == p.a[h.n] + p.a[r]


@settings(max_examples=40, deadline=None)
@given(small_graphs(min_n=2, max_n=7), st.data())
def test_L_sides_are_copies_of_h(h, data):
    p = cached_profile(h, 2)
    r = data.draw(st.integers(0, h.n - 1))
    g = build_L(h, 2, r, p)
    plan = gluing_plan(h, r, p)
    shared = [v for v in range(h.n) if plan.shared >> v & 1]
    assert g.induced(range(h.n)) == h
    assert are_isomorphic(g.induced(shared + list(range(h.n, h.n + r))), h)


def test_build_M_counts():
    assert build_M(cycle_graph(5), 7).edge_count() == 9
    g = build_M(named_graph("K4+pendant"), 7)
    assert g.edge_count() == 9
    assert are_isomorphic(g, build_pendant_clique(4, 7))


def test_build_M_range():
    with pytest.raises(GraphArgumentError):
        build_M(cycle_graph(5), 10)
    with pytest.raises(GraphArgumentError):
        build_M(cycle_graph(5), 4)
    assert build_M(cycle_graph(5), 5) == cycle_graph(5)


@given(small_graphs(min_n=2, max_n=7))
def test_M_without_clones_is_h_itself(h):
    assert build_M(h, h.n) == h


@settings(max_examples=40, deadline=None)
@given(small_graphs(min_n=2, max_n=6), st.data())
def test_M_clones_sit_after_the_base(h, data):
    N = data.draw(st.integers(h.n + 1, 2 * h.n - 1))
    g = build_M(h, N)
    base = list(range(h.n - 1))
    for i in range(h.n - 1, N):
        assert g.degree(i) == h.min_degree
        assert are_isomorphic(g.induced(base + [i]), h)
    for i in range(h.n - 1, N):
        for j in range(i + 1, N):
            assert not g.has_edge(i, j)


@settings(max_examples=30, deadline=None)
@given(small_graphs(min_n=2, max_n=6), st.data())
def test_M_is_covered_with_clone_count(h, data):
    N = data.draw(st.integers(h.n, 2 * h.n - 1))
    g = build_M(h, N)
    assert g.edge_count() == h.edge_count() + (N - h.n) * h.min_degree
    assert is_covered(g, h)


# ---------------------------------------------------------------------------
# Assemblies

def test_ideal_extremal_triangle():
    h = complete_graph(3)
    g = build_ideal_extremal(h, 2, 7, cached_profile(h, 2))
    assert (g.n, g.edge_count()) == (7, 8)
    assert is_covered(g, h)


def test_ideal_extremal_infeasible():
    h = complete_graph(4)
    with pytest.raises(InfeasibleError):
        build_ideal_extremal(h, 2, 3, cached_profile(h, 2))


@pytest.mark.parametrize("n", [3, 4, 5])
@pytest.mark.parametrize("t", [2, 3])
def test_ideal_extremal_meets_closed_form(n, t):
    h = complete_graph(n)
    for N in range(n, 3 * n + 1):
        g = build_ideal_extremal(h, t, N, cached_profile(h, t))
        assert count_cliques(g, t) == closed_form_clique(n, t, N)


def test_elementary_extremal_counts():
    h = named_graph("K4+pendant")
    assert build_elementary_extremal(h, 12, [7, 5]).edge_count() == 16
    assert build_elementary_extremal(complete_graph(3), 7, [4, 3]).edge_count() == 8


@pytest.mark.parametrize("parts", [[8, 4], [4], [], [5, 5]])
def test_elementary_extremal_rejects(parts):
    with pytest.raises(GraphArgumentError, match="invalid partition"):
        build_elementary_extremal(named_graph("K4+pendant"), 12, parts)


def test_elementary_partitions():
    assert elementary_partitions(3, 7) == [[4, 3]]
    assert elementary_partitions(4, 12) == [[7, 5], [6, 6], [4, 4, 4]]
    assert elementary_partitions(4, 3) == []


def test_ip_realization_matches_cost():
    h = cycle_graph(5)
    p = cached_profile(h, 2)
    g = build_ip_realization(h, 2, multiset(5, 5, 2), p)
    assert g.n == 12
    assert count_cliques(g, 2) == 13 == solve_ip(p, 12).value
    assert is_covered(g, h)


def test_ip_realization_needs_full_part():
    h = cycle_graph(5)
    with pytest.raises(ContractError):
        build_ip_realization(h, 2, [4, 4], cached_profile(h, 2))
    with pytest.raises(ContractError):
        build_ip_realization(h, 2, [6, 5], cached_profile(h, 2))


@settings(max_examples=30, deadline=None)
@given(small_graphs(min_n=2, max_n=5), st.integers(2, 3), st.data())
def test_realization_count_is_multiset_cost(h, t, data):
    p = cached_profile(h, t)
    rest = data.draw(st.lists(st.integers(1, h.n), max_size=3))
    parts = multiset(h.n, *rest)
    g = build_ip_realization(h, t, parts, p)
    assert g.n == parts.total
    assert count_cliques(g, t) == parts.cost(p.a)
    assert is_covered(g, h)


# ---------------------------------------------------------------------------
# Named examples

def test_tightness_graphs():
    g = build_tightness(4, 2)
    assert g.n == 9 and g.is_regular() and g.degree(0) == 2
    g = build_tightness(5, 4)
    assert g.n == 11 and g.degree(0) == 4


@pytest.mark.parametrize("l, d", [(4, 3), (4, 0), (4, 4)])
def test_tightness_rejects(l, d):
    with pytest.raises(GraphArgumentError):
        build_tightness(l, d)


def test_pendant_clique():
    g = build_pendant_clique(4, 7)
    assert g.edge_count() == 9
    assert build_pendant_clique(3, 4).edge_count() == 4
    with pytest.raises(GraphArgumentError):
        build_pendant_clique(4, 4)


@pytest.mark.parametrize("n", [3, 4])
def test_pendant_cliques_are_covered_and_optimal(n):
    h = clique_with_pendant(n)
    p = cached_profile(h, 2)
    for N in range(n + 1, n + 5):
        g = build_pendant_clique(n, N)
        assert is_covered(g, h)
        assert g.edge_count() == n * (n - 1) // 2 + N - n == solve_ip(p, N).value


def test_two_lowest_degree_gap_on_pendant_clique():
    report = two_lowest_degree_gap(named_graph("K4+pendant"))
    assert (report['d1'], report['d2'], report['edges']) == (1, 3, 7)
    assert report['applies']
    assert report['l_lower_bound'] == 10
    assert report['l_edges'] == 11
    assert report['m_edges'] == 9 and report['m_beats_l']


def test_two_lowest_degree_gap_regular():
    report = two_lowest_degree_gap(cycle_graph(6))
    assert not report['applies']
    assert report['m_edges'] == 10
