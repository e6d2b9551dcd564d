"""
Tests for rand_lab: degree statistics, gap checks, seeded experiments and scaling tables
"""
from fractions import Fraction

import pandas as pd
import pytest

from classify import certify_ideal, check_regime_shape
from coverage_profile import profile_exact
from errors import GraphArgumentError
from graph_core import complete_bipartite, cycle_graph, named_graph, parse_graph6, random_gnp
from rand_lab import (append_records, degree_gap_check, degree_statistics, load_records,
                      run_experiment, run_trials, scaling_report)


def test_degree_statistics_on_star():
    stats = degree_statistics(complete_bipartite(1, 7))
    assert (stats['min'], stats['max'], stats['spread']) == (1, 7, 6)
    assert stats['mean'] == pytest.approx(1.75)
    assert stats['std'] > 0


@pytest.mark.parametrize("g, expected", [
    (cycle_graph(5), (False, 2)),
    (complete_bipartite(1, 7), (False, 2)),
    (named_graph("K5|K1"), (True, None)),
])
def test_degree_gap_check(g, expected):
    assert degree_gap_check(g) == expected


def test_degree_gap_check_small_eps_is_vacuous():
    assert degree_gap_check(cycle_graph(5), eps=Fraction(1, 10)) == (True, None)


def test_run_experiment_record():
    record = run_experiment(10, Fraction(1, 2), 3, q_max=2)
    assert record.n == 10 and record.seed == 3 and record.p == "1/2"
    assert parse_graph6(record.graph6) == random_gnp(10, Fraction(1, 2), 3)
    assert record.degree_sequence == sorted(record.degree_sequence)
    assert record.shape_passed == (not record.shape_deviations)
    if record.beta_prime is not None:
        assert record.beta - record.gamma in (1, 2)
    assert record.degree_stats == degree_statistics(random_gnp(10, Fraction(1, 2), 3))
    assert record.degree_stats['min'] == record.degree_sequence[0]
    data = record.to_dict()
    assert data['q_max'] == 2 and data['graph6'] == record.graph6
    assert data['degree_stats']['spread'] == record.degree_sequence[-1] - record.degree_sequence[0]


def test_run_trials_ordered_and_thread_independent():
    single = run_trials(8, 0.5, [4, 2, 3], q_max=1, threads=1)
    pooled = run_trials(8, 0.5, [4, 2, 3], q_max=1, threads=3)
    assert [r.seed for r in single] == [2, 3, 4]
    assert [r.to_dict() for r in single] == [r.to_dict() for r in pooled]


def test_run_trials_verbose_progress(capsys):
    run_trials(6, 0.5, [0, 1], q_max=1, threads=1, verbose=True)
    err = capsys.readouterr().err
    assert "[1/2]" in err and "[2/2]" in err


def test_scaling_report_table():
    table = scaling_report([6, 8], 0.5, trials=3, q_max=1)
    assert isinstance(table, pd.DataFrame)
    assert list(table['n']) == [6, 8]
    assert (table['trials'] == 3).all()
    assert (table['gamma_min'] <= table['gamma_max']).all()
    assert table['sqrt_n_log_n'].is_monotonic_increasing
    assert (table['degree_spread_mean'] >= 0).all()


def test_scaling_report_rejects():
    with pytest.raises(GraphArgumentError):
        scaling_report([6], 0.5, trials=0)
    with pytest.raises(GraphArgumentError):
        scaling_report([], 0.5, trials=2)


def test_records_round_trip(tmp_path):
    path = tmp_path / "records.jsonl"
    records = run_trials(7, 0.5, [0, 1], q_max=1)
    append_records(path, records)
    append_records(path, records[:1])
    loaded = load_records(path)
    assert len(loaded) == 3
    assert loaded[0] == records[0].to_dict()
    assert loaded[2]['seed'] == records[0].seed


@pytest.mark.slow
@pytest.mark.parametrize("n", [16, 18])
def test_random_thresholds_desk_scale(n):
    for seed in range(20):
        p = profile_exact(random_gnp(n, Fraction(1, 2), seed), 2)
        report = check_regime_shape(p, q_max=2)
        assert report.gamma >= 1
        if report.beta is not None:
            assert report.beta - report.gamma in (1, 2)
        certified = {r for r in range(n) if certify_ideal(p, r).certified}
        for check in report.checks:
            if check['region'] == 'ideal' and check['r'] in certified:
                assert check['passed'], (seed, check)
        for deviation in report.deviations:
            witness = deviation['witness']
            costs = [shape['cost'] for shape in witness['shapes']]
            if witness['kind'] == 'tie':
                assert witness['others'] and all(c == witness['value'] for c in costs)
            else:
                assert witness['kind'] == 'inequality'
                assert any(c > witness['value'] for c in costs)
