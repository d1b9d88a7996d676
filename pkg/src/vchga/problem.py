"""Constrained minimization problems and the point-evaluation pipeline.

A problem couples an objective with bounded variables and a list of
constraints. All problems are minimization problems; maximize by negating
the objective when authoring. Evaluating a decision vector produces an
individual carrying:

* ``G``   the normalized constraint vector. Every authored constraint is
  rewritten as one or two normalized inequalities of the form G_i <= 0:
  equalities ``h(x) = 0`` become ``|h(x)|/epsilon - 1``, double-bounded
  constraints ``lo <= g(x) <= hi`` split into an upper and a lower
  inequality, and plain ``g(x) <= 0`` constraints are divided by their
  normalization scale.
* ``cv``  the total violation, ``sum(max(0, G_i))``.
* ``nv``  the violated fraction, ``|{i : G_i > 0}| / len(G)``.

A point is feasible exactly when every entry of ``G`` is <= 0 (boundary
values count as satisfied), which is equivalent to ``cv == 0`` and to
``nv == 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Sequence

import numpy as np

Vector = np.ndarray
Evaluator = Callable[[Vector], float]

# tolerance for "lies on the discrete grid" checks
GRID_TOL = 1e-12


class EmptyConstraintSet(ValueError):
    """A violated fraction was requested for an empty constraint vector."""


@dataclass(frozen=True)
class VariableSpec:
    """Bounds for one decision variable; a positive ``step`` makes it discrete."""

    lower: float
    upper: float
    step: float | None = None

    def __post_init__(self):
        if not self.lower < self.upper:
            raise ValueError(f"variable needs lower < upper, got [{self.lower}, {self.upper}]")
        if self.step is not None:
            if self.step <= 0:
                raise ValueError("step must be positive")
            if self.upper - self.lower < self.step:
                raise ValueError("variable range must contain at least one step")

    @property
    def max_index(self) -> int:
        """Largest grid index that stays within the upper bound."""
        if self.step is None:
            raise ValueError("continuous variable has no grid")
        return int(math.floor((self.upper - self.lower) / self.step + 1e-9))


@dataclass(frozen=True)
class ConstraintSpec:
    """One authored constraint.

    ``kind`` is ``"leq"`` for g(x) <= 0, ``"eq"`` for h(x) = 0 or ``"range"``
    for lo <= g(x) <= hi. ``scale`` is the positive normalization divisor
    applied to inequality values; pick it as the magnitude of the natural
    right-hand side of the constraint (1.0 when the constraint is already
    dimensionless or has a zero right-hand side).
    """

    kind: str
    evaluator: Evaluator
    scale: float = 1.0
    lower: float | None = None
    upper: float | None = None

    def __post_init__(self):
        if self.kind not in ("leq", "eq", "range"):
            raise ValueError(f"unknown constraint kind {self.kind!r}")
        if self.scale <= 0:
            raise ValueError("scale must be positive")
        if self.kind == "range":
            if self.lower is None or self.upper is None:
                raise ValueError("range constraint needs both bounds")
            if not self.lower < self.upper:
                raise ValueError("range constraint needs lower < upper")


def inequality(evaluator: Evaluator, scale: float = 1.0) -> ConstraintSpec:
    """g(x) <= 0, stored as g(x)/scale."""
    return ConstraintSpec("leq", evaluator, scale=scale)


def equality(evaluator: Evaluator) -> ConstraintSpec:
    """h(x) = 0, stored as |h(x)|/epsilon - 1 with the problem's epsilon."""
    return ConstraintSpec("eq", evaluator)


def double_bounded(evaluator: Evaluator, lower: float, upper: float,
                   scale: float | None = None) -> ConstraintSpec:
    """lo <= g(x) <= hi, split into two normalized inequalities.

    Both splits share one scale, defaulting to max(|lo|, |hi|) so the pair
    stays dimensionless in the same units.
    """
    if scale is None:
        scale = max(abs(lower), abs(upper))
    return ConstraintSpec("range", evaluator, scale=scale, lower=lower, upper=upper)


@dataclass(frozen=True)
class NormalizedConstraint:
    """A single expanded inequality, callable as evaluator(x) -> normalized value."""

    evaluate: Evaluator
    scale: float
    from_equality: bool

    def __call__(self, x: Vector) -> float:
        return self.evaluate(x)


@dataclass(frozen=True)
class Problem:
    """An immutable constrained minimization problem.

    Evaluators must be pure functions of the decision vector so a problem
    can be shared across concurrent runs. ``epsilon`` is the tolerance band
    within which an equality constraint counts as satisfied.
    """

    name: str
    objective: Evaluator
    variables: tuple[VariableSpec, ...]
    constraints: tuple[ConstraintSpec, ...]
    epsilon: float = 1e-4

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "constraints", tuple(self.constraints))
        if len(self.variables) < 1:
            raise ValueError("problem needs at least one variable")
        if len(self.constraints) < 1:
            raise ValueError("problem needs at least one constraint")
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")

    @property
    def dimension(self) -> int:
        return len(self.variables)

    @cached_property
    def normalized_constraints(self) -> tuple[NormalizedConstraint, ...]:
        return expand_constraints(self)

    @cached_property
    def lower_bounds(self) -> np.ndarray:
        return np.array([v.lower for v in self.variables], dtype=float)

    @cached_property
    def upper_bounds(self) -> np.ndarray:
        return np.array([v.upper for v in self.variables], dtype=float)


@dataclass(frozen=True, eq=False)
class EvaluatedIndividual:
    """A decision vector with its cached objective and violation summary."""

    x: np.ndarray
    f: float
    G: np.ndarray
    cv: float
    nv: float
    feasible: bool


@dataclass
class EvalCounter:
    """Run-scoped count of fitness evaluations (one objective+constraints pass)."""

    count: int = 0


def expand_constraints(problem: Problem) -> tuple[NormalizedConstraint, ...]:
    """Rewrite the authored constraints as normalized inequalities.

    The output order is deterministic: authored order, with the upper split
    of a double-bounded constraint before its lower split. The list length
    is fixed for the lifetime of the problem.
    """
    out: list[NormalizedConstraint] = []
    for spec in problem.constraints:
        fn = spec.evaluator
        if spec.kind == "leq":
            s = spec.scale
            out.append(NormalizedConstraint(
                lambda x, fn=fn, s=s: fn(x) / s, s, False))
        elif spec.kind == "eq":
            eps = problem.epsilon
            out.append(NormalizedConstraint(
                lambda x, fn=fn, eps=eps: abs(fn(x)) / eps - 1.0, 1.0, True))
        else:
            s, lo, hi = spec.scale, spec.lower, spec.upper
            out.append(NormalizedConstraint(
                lambda x, fn=fn, s=s, hi=hi: (fn(x) - hi) / s, s, False))
            out.append(NormalizedConstraint(
                lambda x, fn=fn, s=s, lo=lo: (lo - fn(x)) / s, s, False))
    return tuple(out)


def snap_discrete(x: Vector, variables: Sequence[VariableSpec]) -> np.ndarray:
    """Round discrete coordinates to their nearest grid point.

    Continuous coordinates pass through unchanged. Midpoints round half-up
    on the step index (away from the lower bound). Idempotent, and the
    result stays within the variable bounds.
    """
    out = np.array(x, dtype=float)
    for i, v in enumerate(variables):
        if v.step is None:
            continue
        idx = math.floor((out[i] - v.lower) / v.step + 0.5)
        idx = min(max(idx, 0), v.max_index)
        out[i] = v.lower + idx * v.step
    return out


def constraint_violation(G) -> float:
    """Total violation: sum of positive parts of the normalized values."""
    return float(sum(g for g in G if g > 0.0))


def violation_count(G) -> float:
    """Fraction of constraints violated; a boundary value of 0 is satisfied."""
    n = len(G)
    if n == 0:
        raise EmptyConstraintSet("violated fraction is undefined for zero constraints")
    return sum(1 for g in G if g > 0.0) / n


def _poisoned(x: Vector, n_constraints: int) -> EvaluatedIndividual:
    # non-finite evaluations lose every comparison: worst possible summary
    return EvaluatedIndividual(
        x=np.array(x, dtype=float),
        f=math.inf,
        G=np.full(n_constraints, math.inf),
        cv=math.inf,
        nv=1.0,
        feasible=False,
    )


def evaluate_individual(problem: Problem, x: Vector,
                        counter: EvalCounter) -> EvaluatedIndividual:
    """Evaluate one point: objective, normalized constraints, cv, nv.

    Counts as exactly one fitness evaluation. A non-finite objective or
    constraint value (NaN, infinity, or a raised domain error such as
    division by zero) marks the individual as maximally infeasible instead
    of aborting the run.
    """
    counter.count += 1
    x = np.asarray(x, dtype=float)
    normalized = problem.normalized_constraints
    try:
        with np.errstate(all="ignore"):
            f = float(problem.objective(x))
            G = np.array([c(x) for c in normalized], dtype=float)
    except (ArithmeticError, ValueError):
        return _poisoned(x, len(normalized))
    if not math.isfinite(f) or not np.all(np.isfinite(G)):
        return _poisoned(x, len(normalized))
    cv = constraint_violation(G)
    return EvaluatedIndividual(
        x=x, f=f, G=G, cv=cv, nv=violation_count(G), feasible=cv == 0.0)
