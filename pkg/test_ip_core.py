"""
Tests for ip_core: knapsack optimum, optima enumeration, bounds and closed forms
"""
from fractions import Fraction

import pytest
from hypothesis import given, settings

from conftest import cached_profile, small_graphs
from construct import build_tightness
from errors import BudgetExceeded, ContractError, GraphArgumentError, InfeasibleError
from graph_core import complete_graph, cycle_graph, named_graph, path_graph
from coverage_profile import profile_heuristic
from ip_core import (PartMultiset, check_conv_lemma, closed_form_clique, cov_bounds,
                     divisible_case_unique, enumerate_optima, multiset, ratio_series, solve_ip)


def all_multisets(n, N, largest=None):
    """Every multiset of parts in 1..n summing to N, parts non-increasing"""
    largest = n if largest is None else largest
    if N == 0:
        yield ()
        return
    for k in range(min(largest, N), 0, -1):
        for rest in all_multisets(n, N - k, k):
            yield (k,) + rest


def brute_force(a, n, N, require_full_part=True):
    candidates = [m for m in all_multisets(n, N) if not require_full_part or n in m]
    best = min(sum(a[k] for k in m) for m in candidates)
    return best, sorted(PartMultiset(m) for m in candidates if sum(a[k] for k in m) == best)


def test_triangle_warm_up_value():
    solution = solve_ip(cached_profile(complete_graph(3), 2), 7)
    assert solution.value == 8
    assert solution.optima == [multiset(3, 3, 1)]


def test_pendant_clique_unique_optimum():
    solution = solve_ip(cached_profile(named_graph("K4+pendant"), 2), 7)
    assert solution.value == 9
    assert solution.optima == [multiset(5, 1, 1)]


def test_cycle_unique_optimum():
    solution = solve_ip(cached_profile(cycle_graph(5), 2), 12)
    assert solution.value == 13
    assert solution.optima == [multiset(5, 5, 2)]
    assert solution.render() == "value=13 optima=[[5,5,2]]"


def test_path_tie():
    optima, overflow = enumerate_optima(cached_profile(path_graph(4), 2), 6)
    assert optima == [multiset(4, 1, 1), multiset(4, 2)]
    assert not overflow


def test_tightness_constrained_and_relaxed_optima():
    p = cached_profile(build_tightness(4, 2), 2)
    constrained = solve_ip(p, 13)
    relaxed = solve_ip(p, 13, require_full_part=False)
    assert constrained.value == relaxed.value == 13
    assert constrained.optima == [multiset(9, 4)]
    assert relaxed.optima == [multiset(5, 4, 4), multiset(9, 4)]


def test_infeasible_target():
    with pytest.raises(InfeasibleError, match="fewer than n vertices"):
        solve_ip(cached_profile(cycle_graph(5), 2), 2)


def test_heuristic_profile_rejected():
    with pytest.raises(ContractError):
        solve_ip(profile_heuristic(cycle_graph(5), 2), 7)


def test_optima_cap_sets_overflow():
    # residue 3 splits as {3}, {2,1} and {1,1,1} at equal cost
    optima, overflow = enumerate_optima(cached_profile(path_graph(4), 2), 7, cap=1)
    assert len(optima) == 1 and overflow


def test_dp_table_retained_on_request():
    solution = solve_ip(cached_profile(complete_graph(3), 2), 7, keep_table=True)
    assert solution.dp_table == (0, 2, 3, 3, 5)
    assert solve_ip(cached_profile(complete_graph(3), 2), 7).dp_table is None


def test_part_multiset_counts():
    m = multiset(1, 5, 1)
    assert m.parts == (5, 1, 1)
    assert m.counts == {5: 1, 1: 2}
    assert m.total == 7 and str(m) == "{5,1,1}"


@settings(max_examples=40, deadline=None)
@given(small_graphs(min_n=2, max_n=6))
def test_dp_matches_brute_force(h):
    p = cached_profile(h, 2)
    for N in range(h.n, 3 * h.n + 1):
        value, optima = brute_force(p.a, h.n, N)
        solution = solve_ip(p, N)
        assert solution.value == value
        assert solution.optima == optima


@settings(max_examples=20, deadline=None)
@given(small_graphs(min_n=2, max_n=5))
def test_relaxed_matches_brute_force(h):
    p = cached_profile(h, 2)
    for N in range(1, 2 * h.n + 1):
        value, optima = brute_force(p.a, h.n, N, require_full_part=False)
        solution = solve_ip(p, N, require_full_part=False)
        assert solution.value == value
        assert solution.optima == optima
        if N >= h.n:
            assert value <= solve_ip(p, N).value


@pytest.mark.parametrize("n", [3, 4, 5, 6])
@pytest.mark.parametrize("t", [2, 3])
def test_closed_form_on_complete_graphs(n, t):
    p = cached_profile(complete_graph(n), t)
    for N in range(n, 4 * n + 1):
        assert solve_ip(p, N).value == closed_form_clique(n, t, N)


def test_closed_form_values():
    assert closed_form_clique(3, 2, 7) == 8
    assert closed_form_clique(4, 3, 9) == 11
    assert closed_form_clique(5, 2, 15) == 3 * 10


def test_closed_form_errors():
    with pytest.raises(InfeasibleError):
        closed_form_clique(4, 2, 3)
    with pytest.raises(GraphArgumentError):
        closed_form_clique(3, 4, 9)


def test_cov_bounds_examples():
    p = cached_profile(complete_graph(4), 2)
    assert cov_bounds(p, 10) == (15, 21)
    assert solve_ip(p, 10).value == 17
    assert solve_ip(p, 10).optima == [multiset(4, 4, 2)]
    assert cov_bounds(cached_profile(build_tightness(4, 2), 2), 13) == (13, 22)


@settings(max_examples=30, deadline=None)
@given(small_graphs(min_n=1, max_n=7))
def test_bounds_bracket_the_optimum(h):
    p = cached_profile(h, 2)
    for N in range(h.n, 3 * h.n + 1):
        low, high = cov_bounds(p, N)
        assert low <= solve_ip(p, N).value <= high


def test_adding_a_whole_part_costs_a_n_when_certified():
    p = cached_profile(complete_graph(5), 2)
    for N in range(5, 16):
        assert solve_ip(p, N + 5).value - solve_ip(p, N).value == p.a[5]


@pytest.mark.parametrize("n, k, r, m, expected", [
    (4, 1, 2, 3, (4, 2, 0)),
    (3, 2, 0, 4, (3, 3, 0, 0)),
    (5, 1, 4, 2, (5, 4)),
])
def test_conv_lemma(n, k, r, m, expected):
    result = check_conv_lemma(n, k, r, m)
    assert result.holds
    assert result.maximizers == [expected]


def test_conv_lemma_limits():
    with pytest.raises(GraphArgumentError):
        check_conv_lemma(4, 2, 1, 2)
    with pytest.raises(BudgetExceeded):
        check_conv_lemma(30, 2, 1, 20)


def test_ratio_series_approaches_c():
    p = cached_profile(complete_graph(4), 2)
    c, rows = ratio_series(p, [4, 8, 40, 400])
    assert c == Fraction(3, 2)
    assert rows[0]['ratio'] == Fraction(6, 4)
    gaps = [row['ratio'] - c for row in rows]
    assert all(gap >= 0 for gap in gaps)
    assert gaps[-1] <= Fraction(6, 400)


def test_divisible_case():
    unique, optima = divisible_case_unique(cached_profile(cycle_graph(5), 2), 3)
    assert unique and optima == [multiset(5, 5, 5)]
    unique, optima = divisible_case_unique(cached_profile(build_tightness(4, 2), 2), 2)
    assert not unique
    assert optima == [multiset(9, 5, 4), multiset(9, 9)]
