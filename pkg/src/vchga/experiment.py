"""Multi-run experiments: seeded independent runs, statistics, file output.

Run i of an experiment uses seed = base_seed + i, so results never depend
on execution order or on whether runs were dispatched in parallel.
Statistics are computed over the runs whose best solution is feasible;
when no run ends feasible the summary falls back to violation statistics
(recognizable by feasible_run_count == 0).
"""

from __future__ import annotations

import csv
import json
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

from .benchmarks import get_problem
from .engine import GAConfig, RunResult, run


@dataclass(frozen=True)
class ExperimentConfig:
    problem_name: str
    ga: GAConfig = GAConfig()
    num_runs: int = 20
    base_seed: int = 42
    parallel: bool = False

    def __post_init__(self):
        if self.num_runs < 1:
            raise ValueError("num_runs must be at least 1")

    def seed_for(self, index: int) -> int:
        return self.base_seed + index


@dataclass(frozen=True)
class ExperimentSummary:
    best_f: float
    mean_f: float
    median_f: float
    worst_f: float
    std_f: float
    mean_evaluations: float
    mean_wall_ms: float
    feasible_run_count: int


def _run_indexed(args: tuple[str, GAConfig, int]) -> RunResult:
    # worker entry point: rebuilds the problem by name so runs pickle cleanly
    problem_name, ga, seed = args
    return run(get_problem(problem_name), replace(ga, seed=seed))


def run_experiment(cfg: ExperimentConfig) -> tuple[list[RunResult], ExperimentSummary]:
    """Execute num_runs independent seeded runs and summarize them."""
    get_problem(cfg.problem_name)  # fail fast on unknown names
    jobs = [(cfg.problem_name, cfg.ga, cfg.seed_for(i)) for i in range(cfg.num_runs)]
    if cfg.parallel and cfg.num_runs > 1:
        with ProcessPoolExecutor() as pool:
            results = list(pool.map(_run_indexed, jobs))
    else:
        results = [_run_indexed(job) for job in jobs]
    return results, summarize(results)


def summarize(results: list[RunResult]) -> ExperimentSummary:
    """Best/mean/median/worst/std over the feasible-run bests.

    Sample standard deviation (n-1 denominator, 0.0 for a single value);
    median of an even count is the mean of the two middle values. With zero
    feasible runs the same statistics are taken over the bests' violation
    totals instead.
    """
    if not results:
        raise ValueError("need at least one run")
    feasible = [r.best.f for r in results if r.best.feasible]
    values = feasible if feasible else [r.best.cv for r in results]
    return ExperimentSummary(
        best_f=min(values),
        mean_f=statistics.fmean(values),
        median_f=statistics.median(values),
        worst_f=max(values),
        std_f=statistics.stdev(values) if len(values) > 1 else 0.0,
        mean_evaluations=statistics.fmean(r.total_evaluations for r in results),
        mean_wall_ms=statistics.fmean(r.wall_time_ms for r in results),
        feasible_run_count=len(feasible),
    )


def emit_results(results: list[RunResult], summary: ExperimentSummary,
                 out_dir, cfg: ExperimentConfig) -> dict[str, Path]:
    """Write runs.csv, trace.csv and summary.json into out_dir.

    Floats are written with their shortest round-trip decimal form, so
    identical inputs produce byte-identical files.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {
        "runs": out / "runs.csv",
        "trace": out / "trace.csv",
        "summary": out / "summary.json",
    }

    dimension = len(results[0].best.x)
    with open(paths["runs"], "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["run_id", "seed", "best_f", "feasible", "cv", "nv", "evals",
                         "generations", "stop_reason", "wall_ms"]
                        + [f"x_{k}" for k in range(dimension)])
        for i, r in enumerate(results):
            writer.writerow([i, cfg.seed_for(i), repr(r.best.f), r.best.feasible,
                             repr(r.best.cv), repr(r.best.nv), r.total_evaluations,
                             r.generations_run, r.stop_reason, repr(r.wall_time_ms)]
                            + [repr(float(v)) for v in r.best.x])

    with open(paths["trace"], "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["run_id", "generation", "best_f", "best_feasible",
                         "avg_cv_elites", "num_feasible", "evals_so_far"])
        for i, r in enumerate(results):
            for t in r.trace:
                writer.writerow([i, t.generation, repr(t.best_f), t.best_feasible,
                                 repr(t.avg_cv_elites), t.num_feasible, t.evals_so_far])

    payload = {
        "problem": cfg.problem_name,
        "handler": cfg.ga.handler,
        "num_runs": cfg.num_runs,
        "best": summary.best_f,
        "mean": summary.mean_f,
        "median": summary.median_f,
        "worst": summary.worst_f,
        "std": summary.std_f,
        "mean_evals": summary.mean_evaluations,
        "feasible_runs": summary.feasible_run_count,
    }
    with open(paths["summary"], "w") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
    return paths
