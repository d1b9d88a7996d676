"""Real-coded genetic algorithm with violation-based feasibility rules.

Individuals are compared pairwise: a feasible solution always beats an
infeasible one, two feasible solutions go by objective value, and two
infeasible solutions go first by violated fraction (nv) and then by total
violation (cv). The generation loop keeps the best individuals unchanged
(elitism), breeds new candidates by whole-vector arithmetic crossover
between binary-tournament winners, reseeds a few slots with fresh uniform
draws, and carries the most promising infeasible individual forward so the
search keeps pressure on the feasible boundary.

Penalty-based handlers plug into the same loop by swapping the ranking
used for sorting, tournaments and elitism; everything else is shared, so
the constraint handler is the only experimental variable.

A run is deterministic given its seed: same seed, same result.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace
from typing import Callable, Optional, Sequence

import numpy as np

from .handlers import (
    DynamicPenaltyConfig,
    StaticPenaltyConfig,
    deb_fitness,
    dynamic_penalty_fitness,
    static_penalty_fitness,
)
from .problem import (
    EvalCounter,
    EvaluatedIndividual,
    Problem,
    evaluate_individual,
    snap_discrete,
)

HANDLERS = ("vch", "static-penalty", "dynamic-penalty", "deb")

CONVERGED = "converged"
MAX_GENERATIONS = "max_generations"
EVAL_BUDGET = "eval_budget"

# attempts per population slot before feasible-only initialization gives up
FEASIBLE_INIT_CAP = 10_000

# guard against zero denominators in the relative-error stopping test
_REL_ERR_FLOOR = 1e-12


class FeasibleInitExhausted(RuntimeError):
    """Feasible-only initialization hit its rejection-sampling cap."""


@dataclass(frozen=True)
class GAConfig:
    """Engine settings. Defaults reproduce the reference protocol:
    population 100 split into 1 elite + 94 crossover children + 5 fresh
    mutants per generation, at most 500 generations, and a stop once the
    best design vector moves by less than 1e-6 relative for 25 consecutive
    generations."""

    pop_num: int = 100
    n_elite: int = 1
    n_cross: int = 94
    n_mut: int = 5
    max_generations: int = 500
    stop_tolerance: float = 1e-6
    stop_patience: int = 25
    max_evaluations: int = 50_000
    seed: int = 0
    handler: str = "vch"
    feasible_init: bool = False
    tournament_size: int = 2
    static_penalty: StaticPenaltyConfig = field(default_factory=StaticPenaltyConfig)
    dynamic_penalty: DynamicPenaltyConfig = field(default_factory=DynamicPenaltyConfig)

    def __post_init__(self):
        if self.pop_num < 2:
            raise ValueError("pop_num must be at least 2")
        if self.n_elite < 1:
            raise ValueError("n_elite must be at least 1")
        if self.n_cross < 0 or self.n_mut < 0:
            raise ValueError("n_cross and n_mut must be non-negative")
        if self.n_elite + self.n_cross + self.n_mut != self.pop_num:
            raise ValueError(
                f"n_elite + n_cross + n_mut must equal pop_num "
                f"({self.n_elite} + {self.n_cross} + {self.n_mut} != {self.pop_num})")
        if self.tournament_size < 2:
            raise ValueError("tournament_size must be at least 2")
        if self.stop_patience < 1:
            raise ValueError("stop_patience must be at least 1")
        if self.handler not in HANDLERS:
            raise ValueError(f"unknown handler {self.handler!r}, expected one of {HANDLERS}")


@dataclass(frozen=True)
class GenerationTrace:
    generation: int
    best_f: float
    best_feasible: bool
    avg_cv_elites: float
    num_feasible: int
    evals_so_far: int


@dataclass(frozen=True)
class RunResult:
    best: EvaluatedIndividual
    trace: tuple[GenerationTrace, ...]
    total_evaluations: int
    generations_run: int
    wall_time_ms: float
    stop_reason: str
    rejection_evaluations: int = 0


RankKey = Callable[[EvaluatedIndividual], tuple]
# builds the ranking key for one generation; population-sensitive handlers
# (Deb's rule) recompute it from the population each time
KeyBuilder = Callable[[Sequence[EvaluatedIndividual], int], RankKey]


def vch_key(ind: EvaluatedIndividual) -> tuple:
    """Sort key equivalent to the pairwise feasibility rules."""
    if ind.feasible:
        return (0.0, ind.f, 0.0, 0.0)
    return (1.0, ind.nv, ind.cv, ind.f)


def compare_vch(a: EvaluatedIndividual, b: EvaluatedIndividual) -> int:
    """Feasibility-rule comparison: -1 if a wins, 1 if b wins, 0 on a tie.

    Feasible beats infeasible; among feasible the lower objective wins;
    among infeasible the lower violated fraction wins, then the lower total
    violation, then the lower objective.
    """
    ka, kb = vch_key(a), vch_key(b)
    if ka < kb:
        return -1
    if kb < ka:
        return 1
    return 0


def sort_population(pop: Sequence[EvaluatedIndividual]) -> list[EvaluatedIndividual]:
    """Stable sort under the feasibility rules: feasible ascending by f
    first, then infeasible by (nv, cv, f). Prior order breaks ties."""
    return sorted(pop, key=vch_key)


def random_vector(problem: Problem, rng: np.random.Generator) -> np.ndarray:
    """Uniform draw within the variable bounds, snapped to any grids."""
    span = problem.upper_bounds - problem.lower_bounds
    x = problem.lower_bounds + span * rng.random(problem.dimension)
    return snap_discrete(x, problem.variables)


# shape of the non-uniform mutation's step-size decay over generations
_CREEP_EXPONENT = 5.0


def mutate_individual(problem: Problem, rng: np.random.Generator,
                      parent: np.ndarray | None = None,
                      generation: int = 0, max_generations: int = 1) -> np.ndarray:
    """Mutate one randomly chosen coordinate of the parent.

    Half the time the coordinate is re-drawn uniformly over its full range
    (global exploration); otherwise it creeps by a non-uniform step that
    starts range-sized and decays toward zero as the run approaches
    ``max_generations`` (local refinement). Without a parent the whole
    vector is re-drawn, identical in distribution to initialization. The
    result is snapped to any discrete grids.
    """
    if parent is None:
        return random_vector(problem, rng)
    k = int(rng.integers(0, problem.dimension))
    x = np.array(parent, dtype=float)
    lo, hi = problem.lower_bounds[k], problem.upper_bounds[k]
    if rng.random() < 0.5:
        x[k] = lo + (hi - lo) * rng.random()
    else:
        progress = min(generation / max(max_generations, 1), 1.0)
        shrink = 1.0 - rng.random() ** ((1.0 - progress) ** _CREEP_EXPONENT)
        if rng.random() < 0.5:
            x[k] = x[k] + (hi - x[k]) * shrink
        else:
            x[k] = x[k] - (x[k] - lo) * shrink
    return snap_discrete(x, problem.variables)


def initialize_population(problem: Problem, config: GAConfig,
                          rng: np.random.Generator,
                          counter: EvalCounter) -> list[EvaluatedIndividual]:
    """Draw and evaluate the initial population.

    With ``feasible_init`` each slot rejection-samples until it lands on a
    feasible point, up to FEASIBLE_INIT_CAP attempts per slot.
    """
    pop = []
    for _ in range(config.pop_num):
        ind = evaluate_individual(problem, random_vector(problem, rng), counter)
        if config.feasible_init:
            attempts = 1
            while not ind.feasible:
                if attempts >= FEASIBLE_INIT_CAP:
                    raise FeasibleInitExhausted(
                        f"no feasible point for {problem.name!r} in "
                        f"{FEASIBLE_INIT_CAP} attempts; rerun with feasible_init=False")
                ind = evaluate_individual(problem, random_vector(problem, rng), counter)
                attempts += 1
        pop.append(ind)
    return pop


def select_parent(pop: Sequence[EvaluatedIndividual], tournament_size: int,
                  rng: np.random.Generator,
                  key: RankKey = vch_key) -> EvaluatedIndividual:
    """Tournament selection: draw uniformly with replacement, return the
    winner under ``key``; the first-drawn individual wins ties."""
    draws = rng.integers(0, len(pop), size=tournament_size)
    winner = pop[draws[0]]
    winner_key = key(winner)
    for i in draws[1:]:
        contender = pop[i]
        ck = key(contender)
        if ck < winner_key:
            winner, winner_key = contender, ck
    return winner


def arithmetic_crossover(a: np.ndarray, b: np.ndarray, rng: np.random.Generator,
                         variables) -> np.ndarray:
    """Arithmetic blend child = phi*a + (1-phi)*b with fresh phi ~ U(0,1)
    drawn per coordinate, snapped to any discrete grids. Every child
    coordinate lies between the parents' coordinates, so continuous
    children stay inside the parents' bounding box."""
    phi = rng.random(len(a))
    child = phi * a + (1.0 - phi) * b
    return snap_discrete(child, variables)


def retain_infeasible_elite(pop: Sequence[EvaluatedIndividual]) -> Optional[EvaluatedIndividual]:
    """The infeasible individual with the lowest cv, breaking ties by
    objective; None when the population is fully feasible."""
    infeasible = [ind for ind in pop if not ind.feasible]
    if not infeasible:
        return None
    return min(infeasible, key=lambda ind: (ind.cv, ind.f))


def _vch_builder(pop, generation) -> RankKey:
    return vch_key


def resolve_ranking(config: GAConfig, problem: Problem) -> KeyBuilder:
    """Per-generation ranking key for the configured constraint handler."""
    if config.handler == "vch":
        return _vch_builder
    if config.handler == "static-penalty":
        cfg = config.static_penalty

        def build_static(pop, generation):
            return lambda ind: (static_penalty_fitness(ind, cfg),)
        return build_static
    if config.handler == "dynamic-penalty":
        cfg = config.dynamic_penalty

        def build_dynamic(pop, generation):
            t = max(generation, 1)
            return lambda ind: (dynamic_penalty_fitness(ind, t, cfg, problem),)
        return build_dynamic
    if config.handler == "deb":
        def build_deb(pop, generation):
            feasible_f = [ind.f for ind in pop if ind.feasible]
            f_worst = max(feasible_f) if feasible_f else 0.0
            return lambda ind: (deb_fitness(ind, f_worst),)
        return build_deb
    raise ValueError(f"unknown handler {config.handler!r}")


def _tracking_key(config: GAConfig) -> RankKey:
    # fixed key for the best-ever individual; generation- or
    # population-relative fitnesses fall back to feasibility-first ranking
    if config.handler == "vch":
        return vch_key
    if config.handler == "static-penalty":
        cfg = config.static_penalty
        return lambda ind: (static_penalty_fitness(ind, cfg),)
    return lambda ind: (0.0, ind.f) if ind.feasible else (1.0, ind.cv, ind.f)


def step_generation(problem: Problem, config: GAConfig,
                    pop: list[EvaluatedIndividual], rng: np.random.Generator,
                    counter: EvalCounter, generation: int = 1,
                    ranking: KeyBuilder = None) -> list[EvaluatedIndividual]:
    """Produce the next sorted population from a sorted one.

    Elites are carried over unchanged, crossover children and fresh mutants
    fill the rest, and the old population's best infeasible individual is
    injected over the worst non-elite slot unless an at-least-as-good
    infeasible candidate (by cv, then f) already survived. Costs exactly
    n_cross + n_mut evaluations.
    """
    build = ranking if ranking is not None else _vch_builder
    parent_key = build(pop, generation)

    next_pop = list(pop[:config.n_elite])
    for _ in range(config.n_cross):
        p1 = select_parent(pop, config.tournament_size, rng, key=parent_key)
        p2 = select_parent(pop, config.tournament_size, rng, key=parent_key)
        child = arithmetic_crossover(p1.x, p2.x, rng, problem.variables)
        next_pop.append(evaluate_individual(problem, child, counter))
    for _ in range(config.n_mut):
        parent = select_parent(pop, config.tournament_size, rng, key=parent_key)
        mutant = mutate_individual(problem, rng, parent.x,
                                   generation, config.max_generations)
        next_pop.append(evaluate_individual(problem, mutant, counter))

    candidate = retain_infeasible_elite(pop)
    if candidate is not None:
        kept = any(not ind.feasible and (ind.cv, ind.f) <= (candidate.cv, candidate.f)
                   for ind in next_pop)
        if not kept:
            slot_key = build(next_pop, generation)
            worst = max(range(config.n_elite, len(next_pop)),
                        key=lambda i: slot_key(next_pop[i]))
            next_pop[worst] = candidate

    next_pop.sort(key=build(next_pop, generation))
    return next_pop


def check_stop(best_history: Sequence[np.ndarray], config: GAConfig,
               evals: int | None = None) -> Optional[str]:
    """Stop reason, or None to continue.

    Converged when the best design vector's largest relative coordinate
    change stayed below ``stop_tolerance`` for ``stop_patience`` consecutive
    generation pairs; otherwise the generation or evaluation budgets apply.
    """
    generations = len(best_history) - 1
    if generations >= config.stop_patience:
        converged = True
        for prev, cur in zip(best_history[-config.stop_patience - 1:-1],
                             best_history[-config.stop_patience:]):
            denom = np.maximum(np.abs(prev), _REL_ERR_FLOOR)
            if np.max(np.abs(cur - prev) / denom) >= config.stop_tolerance:
                converged = False
                break
        if converged:
            return CONVERGED
    if generations >= config.max_generations:
        return MAX_GENERATIONS
    if evals is not None and evals >= config.max_evaluations:
        return EVAL_BUDGET
    return None


def _snapshot(generation: int, pop: Sequence[EvaluatedIndividual],
              config: GAConfig, evals: int) -> GenerationTrace:
    elites = pop[:config.n_elite]
    return GenerationTrace(
        generation=generation,
        best_f=pop[0].f,
        best_feasible=pop[0].feasible,
        avg_cv_elites=sum(e.cv for e in elites) / len(elites),
        num_feasible=sum(1 for ind in pop if ind.feasible),
        evals_so_far=evals,
    )


def run(problem: Problem, config: GAConfig) -> RunResult:
    """Execute one full optimization run.

    Deterministic for a fixed (problem, seed); the returned best is the
    best individual ever observed under the active handler's ordering.
    """
    rng = np.random.default_rng(config.seed)
    counter = EvalCounter()
    start = time.perf_counter()

    pop = initialize_population(problem, config, rng, counter)
    rejections = counter.count - config.pop_num
    ranking = resolve_ranking(config, problem)
    tracking = _tracking_key(config)

    pop.sort(key=ranking(pop, 0))
    best = min(pop, key=tracking)
    history = [pop[0].x]
    trace = [_snapshot(0, pop, config, counter.count - rejections)]

    generation = 0
    while True:
        reason = check_stop(history, config, evals=counter.count)
        if reason is not None:
            break
        generation += 1
        pop = step_generation(problem, config, pop, rng, counter, generation, ranking)
        contender = min(pop, key=tracking)
        if tracking(contender) < tracking(best):
            best = contender
        history.append(pop[0].x)
        trace.append(_snapshot(generation, pop, config, counter.count - rejections))

    return RunResult(
        best=best,
        trace=tuple(trace),
        total_evaluations=counter.count - rejections,
        generations_run=generation,
        wall_time_ms=(time.perf_counter() - start) * 1e3,
        stop_reason=reason,
        rejection_evaluations=rejections,
    )
