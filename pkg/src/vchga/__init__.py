"""Feasibility-rule genetic algorithm for constrained optimization."""

from .benchmarks import (
    BenchmarkEntry,
    REFERENCE_CHECKS,
    UnknownProblem,
    get_entry,
    get_problem,
    problem_names,
)
from .engine import (
    FeasibleInitExhausted,
    GAConfig,
    GenerationTrace,
    RunResult,
    compare_vch,
    run,
    sort_population,
)
from .experiment import (
    ExperimentConfig,
    ExperimentSummary,
    emit_results,
    run_experiment,
    summarize,
)
from .handlers import (
    DynamicPenaltyConfig,
    StaticPenaltyConfig,
    deb_compare,
    dynamic_penalty_fitness,
    static_penalty_fitness,
)
from .problem import (
    ConstraintSpec,
    EmptyConstraintSet,
    EvalCounter,
    EvaluatedIndividual,
    Problem,
    VariableSpec,
    constraint_violation,
    double_bounded,
    equality,
    evaluate_individual,
    expand_constraints,
    inequality,
    snap_discrete,
    violation_count,
)

__all__ = [
    "BenchmarkEntry",
    "ConstraintSpec",
    "DynamicPenaltyConfig",
    "EmptyConstraintSet",
    "EvalCounter",
    "EvaluatedIndividual",
    "ExperimentConfig",
    "ExperimentSummary",
    "FeasibleInitExhausted",
    "GAConfig",
    "GenerationTrace",
    "Problem",
    "REFERENCE_CHECKS",
    "RunResult",
    "StaticPenaltyConfig",
    "UnknownProblem",
    "VariableSpec",
    "compare_vch",
    "constraint_violation",
    "deb_compare",
    "double_bounded",
    "dynamic_penalty_fitness",
    "emit_results",
    "equality",
    "evaluate_individual",
    "expand_constraints",
    "get_entry",
    "get_problem",
    "inequality",
    "problem_names",
    "run",
    "run_experiment",
    "snap_discrete",
    "sort_population",
    "static_penalty_fitness",
    "summarize",
    "violation_count",
]
