"""Monte Carlo harness: seeded independent trials, summary statistics, and
the table/figure data behind the bound comparisons.

Trial i always draws from the stream (master_seed, i), so results are
reproducible and independent of the worker count; rows are aggregated in
trial-index order regardless of completion order.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import bounds as _bounds
from .desolver import solve
from .exact import hopping_number
from .models import (count_cycles_2regular, sample_contiguous,
                     sample_simple_regular, trial_rng)
from .strategies import degree_greedy_strategy, hamilton_hop_strategy

STRATEGIES = ("hamilton", "greedy", "cycles", "exact")
MODELS = ("config", "contiguous")


class ConfigError(Exception):
    """Invalid experiment configuration."""


@dataclass
class ExperimentConfig:
    strategy: str
    d: int
    n: int
    trials: int
    master_seed: int = 0
    model: str = "contiguous"
    jobs: int = 1

    def validate(self) -> None:
        if self.strategy not in STRATEGIES:
            raise ConfigError(f"unknown strategy {self.strategy!r}")
        if self.model not in MODELS:
            raise ConfigError(f"unknown model {self.model!r}")
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if self.n < 1:
            raise ConfigError("n must be >= 1")
        if self.strategy == "hamilton":
            if self.d < 3:
                raise ConfigError("hamilton strategy needs d >= 3")
            if ((self.d - 2) * self.n) % 2 != 0:
                raise ConfigError("(d-2)*n must be even for the contiguous model")
            if self.n < 4:
                raise ConfigError("hamilton strategy needs n >= 4")
        elif self.strategy == "greedy":
            if self.d != 3:
                raise ConfigError("degree-greedy runs for d = 3 only")
            if (3 * self.n) % 2 != 0:
                raise ConfigError("3*n must be even")
        elif self.strategy == "cycles":
            if self.d != 2:
                raise ConfigError("cycle counting is the d = 2 model")
        elif self.strategy == "exact":
            if (self.d * self.n) % 2 != 0:
                raise ConfigError("d*n must be even")
            if self.n <= self.d:
                raise ConfigError("need n > d to sample a simple graph")


@dataclass
class TrialStats:
    """Summary of one statistic over independent trials."""

    mean: float
    sd: float
    se: float
    ci_low: float
    ci_high: float
    min: float
    max: float
    trials: int
    values: np.ndarray | None = None

    @classmethod
    def from_values(cls, values, keep_values: bool = True) -> "TrialStats":
        v = np.asarray(values, dtype=float)
        if v.size == 0:
            raise ValueError("no trial values")
        mean = float(v.mean())
        sd = float(v.std(ddof=1)) if v.size > 1 else 0.0
        se = sd / math.sqrt(v.size)
        return cls(
            mean=mean, sd=sd, se=se,
            ci_low=mean - 1.96 * se, ci_high=mean + 1.96 * se,
            min=float(v.min()), max=float(v.max()),
            trials=int(v.size),
            values=v if keep_values else None,
        )


def _one_trial(cfg: ExperimentConfig, trial: int) -> dict:
    rng = trial_rng(cfg.master_seed, trial)
    if cfg.strategy == "hamilton":
        cg = sample_contiguous(cfg.n, cfg.d, rng)
        res = hamilton_hop_strategy(cg)
        return {"trial": trial, "b1_size": res.b1_size, "hops": len(res.hops),
                "X": res.failed_attempts, "statistic": res.b1_size / cfg.n}
    if cfg.strategy == "greedy":
        res, _traj = degree_greedy_strategy(cfg.n, rng, record_every=cfg.n + 1)
        return {"trial": trial, "b1_size": res.b1_size, "hops": len(res.hops),
                "X": res.failed_attempts, "statistic": res.b1_size / cfg.n}
    if cfg.strategy == "cycles":
        y = count_cycles_2regular(cfg.n, rng)
        return {"trial": trial, "cycles": y, "hopping_number": 3 * y,
                "statistic": 3.0 * y}
    g = sample_simple_regular(cfg.n, cfg.d, rng)
    h = hopping_number(g)
    return {"trial": trial, "hopping_number": h, "statistic": float(h)}


def run_trials(cfg: ExperimentConfig) -> list:
    """Per-trial records, in trial order."""
    cfg.validate()
    jobs = cfg.jobs if cfg.jobs > 0 else (os.cpu_count() or 1)
    indices = range(cfg.trials)
    if jobs == 1 or cfg.trials == 1:
        return [_one_trial(cfg, i) for i in indices]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        rows = list(pool.map(_one_trial, [cfg] * cfg.trials, indices))
    rows.sort(key=lambda r: r["trial"])
    return rows


def run_experiment(cfg: ExperimentConfig, keep_values: bool = True) -> TrialStats:
    """Run all trials and summarize the target statistic.

    The statistic is b1_size/n for the strategies, 3 x cycle count for the
    d = 2 model, and the exact hopping number otherwise.
    """
    rows = run_trials(cfg)
    return TrialStats.from_values([r["statistic"] for r in rows], keep_values)


def table1_report(degrees=_bounds.TABLE1_DEGREES) -> list:
    """One BoundReport per degree; ordering eml <= config < upper is checked."""
    return [_bounds.bound_report(d) for d in degrees]


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)


def rows_to_csv(rows, columns) -> str:
    """Fixed-schema CSV: header row, 6 significant digits, LF endings."""
    lines = [",".join(columns)]
    for r in rows:
        lines.append(",".join(_fmt(r[c]) for c in columns))
    return "\n".join(lines) + "\n"


def figure_data(which: str) -> str:
    """Plottable CSV behind the two figures.

    'bounds-curve': the three bound fractions per degree over the standard
    degree list. 'ode-trajectory': the degree-greedy ODE solution grid.
    """
    if which == "bounds-curve":
        rows = [
            {"d": rep.d, "eml": rep.eml_fraction, "config": rep.config_fraction,
             "upper": rep.upper_float}
            for rep in table1_report()
        ]
        return rows_to_csv(rows, ["d", "eml", "config", "upper"])
    if which == "ode-trajectory":
        sol = solve(richardson=False)
        rows = [
            {"x": x, "y0": y0, "y1": y1, "y2": y2, "y3": y3, "hopped": h}
            for x, (y0, y1, y2, y3), h in zip(sol.xs, sol.ys, sol.hopped)
        ]
        return rows_to_csv(rows, ["x", "y0", "y1", "y2", "y3", "hopped"])
    raise ConfigError(f"unknown figure {which!r}")
