"""Classical penalty-based constraint handlers.

Each handler maps an evaluated individual to a scalar fitness that the
engine can sort on, replacing the feasibility-rule comparison. A feasible
individual's transformed fitness always equals its raw objective.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .problem import EvaluatedIndividual, Problem


@dataclass(frozen=True)
class StaticPenaltyConfig:
    """Violation-magnitude bands with their penalty coefficients.

    ``levels`` is a sequence of (threshold, coefficient) pairs with strictly
    increasing thresholds and non-decreasing coefficients; a violation v is
    charged with the coefficient of the first band whose threshold is >= v
    (the last band catches anything beyond the final threshold). One shared
    banding applies to every constraint.
    """

    levels: tuple[tuple[float, float], ...] = ((math.inf, 1e6),)

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(tuple(l) for l in self.levels))
        if not self.levels:
            raise ValueError("need at least one penalty level")
        thresholds = [t for t, _ in self.levels]
        coefficients = [a for _, a in self.levels]
        if any(t2 <= t1 for t1, t2 in zip(thresholds, thresholds[1:])):
            raise ValueError("thresholds must be strictly increasing")
        if any(a < 0 for a in coefficients):
            raise ValueError("coefficients must be non-negative")
        if any(a2 < a1 for a1, a2 in zip(coefficients, coefficients[1:])):
            raise ValueError("coefficients must be non-decreasing")

    def coefficient(self, violation: float) -> float:
        for threshold, coeff in self.levels:
            if violation <= threshold:
                return coeff
        return self.levels[-1][1]


@dataclass(frozen=True)
class DynamicPenaltyConfig:
    """Generation-dependent penalty (0.5 t)^alpha with inner exponent beta."""

    c: float = 0.5
    alpha: float = 2.0
    beta: float = 2.0
    epsilon: float = 1e-4  # equality band for the penalty term

    def __post_init__(self):
        if self.c <= 0:
            raise ValueError("c must be positive")


def static_penalty_fitness(ind: EvaluatedIndividual, cfg: StaticPenaltyConfig) -> float:
    """Objective plus banded quadratic penalties on the normalized violations."""
    penalty = 0.0
    for g in ind.G:
        v = g if g > 0.0 else 0.0
        penalty += cfg.coefficient(v) * v * v
    return ind.f + penalty


def dynamic_penalty_fitness(ind: EvaluatedIndividual, generation: int,
                            cfg: DynamicPenaltyConfig, problem: Problem) -> float:
    """Objective plus (c t)^alpha times the violation sum on raw units.

    Inequality violations enter as max(0, g_i)^beta in the constraint's own
    units and equality residuals as |h_j| outside the tolerance band; both
    are recovered exactly from the stored normalized values via the
    problem's scales and equality tolerance.
    """
    svc = 0.0
    for g, spec in zip(ind.G, problem.normalized_constraints):
        if spec.from_equality:
            residual = problem.epsilon * (g + 1.0)
            if residual > cfg.epsilon:
                svc += residual
        elif g > 0.0:
            svc += (g * spec.scale) ** cfg.beta
    return ind.f + (cfg.c * generation) ** cfg.alpha * svc


def deb_fitness(ind: EvaluatedIndividual, f_worst: float) -> float:
    """Feasible: raw objective. Infeasible: worst feasible objective plus cv."""
    return ind.f if ind.feasible else f_worst + ind.cv


def deb_compare(a: EvaluatedIndividual, b: EvaluatedIndividual, f_worst: float) -> int:
    """-1 if a wins, 1 if b wins, 0 on a tie, under the separation fitness."""
    fa, fb = deb_fitness(a, f_worst), deb_fitness(b, f_worst)
    if fa < fb:
        return -1
    if fb < fa:
        return 1
    return 0
