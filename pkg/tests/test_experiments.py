import math

import numpy as np
import pytest

from hopforce.experiments import (ConfigError, ExperimentConfig, TrialStats,
                                  figure_data, rows_to_csv, run_experiment,
                                  run_trials, table1_report)
from hopforce.models import expected_cycles


def test_trial_stats_summary():
    s = TrialStats.from_values([1.0, 2.0, 3.0, 4.0])
    assert s.mean == 2.5
    assert s.sd == pytest.approx(np.std([1, 2, 3, 4], ddof=1))
    assert s.se == pytest.approx(s.sd / 2)
    assert s.ci_low <= s.mean <= s.ci_high
    assert (s.min, s.max, s.trials) == (1.0, 4.0, 4)
    with pytest.raises(ValueError):
        TrialStats.from_values([])


def test_config_validation():
    ExperimentConfig("hamilton", d=3, n=100, trials=2).validate()
    bad = [
        ExperimentConfig("nope", d=3, n=10, trials=1),
        ExperimentConfig("hamilton", d=2, n=10, trials=1),
        ExperimentConfig("hamilton", d=3, n=99, trials=1),   # parity
        ExperimentConfig("greedy", d=4, n=10, trials=1),
        ExperimentConfig("greedy", d=3, n=99, trials=1),
        ExperimentConfig("cycles", d=3, n=10, trials=1),
        ExperimentConfig("exact", d=3, n=3, trials=1),
        ExperimentConfig("hamilton", d=3, n=100, trials=0),
    ]
    for cfg in bad:
        with pytest.raises(ConfigError):
            cfg.validate()


def test_run_trials_deterministic_and_order_stable():
    cfg = ExperimentConfig("hamilton", d=3, n=200, trials=4, master_seed=3)
    rows1 = run_trials(cfg)
    rows2 = run_trials(cfg)
    assert rows1 == rows2
    assert [r["trial"] for r in rows1] == [0, 1, 2, 3]
    cfg_par = ExperimentConfig("hamilton", d=3, n=200, trials=4, master_seed=3,
                               jobs=2)
    assert run_trials(cfg_par) == rows1


def test_run_experiment_cycles_statistic():
    n = 20_000
    cfg = ExperimentConfig("cycles", d=2, n=n, trials=60, master_seed=5)
    stats = run_experiment(cfg)
    target = 3 * expected_cycles(n)
    assert abs(stats.mean - target) <= 3.5 * stats.se


def test_run_experiment_exact_statistic():
    cfg = ExperimentConfig("exact", d=3, n=8, trials=5, master_seed=7)
    stats = run_experiment(cfg)
    assert stats.values is not None
    assert all(float(v).is_integer() and 3 <= v <= 8 for v in stats.values)


def test_run_experiment_greedy_small():
    cfg = ExperimentConfig("greedy", d=3, n=2000, trials=3, master_seed=9)
    stats = run_experiment(cfg)
    assert 0.4 < stats.mean < 0.56


def test_table1_report_rows():
    reps = table1_report()
    assert [r.d for r in reps][:4] == [3, 4, 5, 6]
    assert len(reps) == 15
    for r in reps:
        assert r.eml_fraction <= r.config_fraction < r.upper_float


def test_rows_to_csv_format():
    text = rows_to_csv([{"a": 1, "b": 0.12345678}, {"a": 2, "b": 1 / 3}],
                       ["a", "b"])
    assert text == "a,b\n1,0.123457\n2,0.333333\n"
    assert "\r" not in text


def test_figure_data_bounds_curve():
    text = figure_data("bounds-curve")
    lines = text.strip().split("\n")
    assert lines[0] == "d,eml,config,upper"
    assert len(lines) == 16
    assert lines[1].startswith("3,0.0149")
    with pytest.raises(ConfigError):
        figure_data("nope")


def test_mc_estimate_brackets_between_bounds():
    # lower-bound fractions <= observed mean <= upper fraction + 3 se (+ O(1/n))
    from hopforce.bounds import bound_report

    n = 5000
    cfg = ExperimentConfig("hamilton", d=3, n=n, trials=30, master_seed=15)
    stats = run_experiment(cfg)
    rep = bound_report(3)
    assert rep.eml_fraction <= rep.config_fraction <= stats.mean
    assert stats.mean <= rep.upper_float + 3 * stats.se + 5.0 / n
