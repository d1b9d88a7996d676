"""Engineering design benchmarks and analytic toy problems.

Each factory returns a BenchmarkEntry bundling the problem with a reference
solution from the published comparison tables. REFERENCE_CHECKS lists every
reference point the `verify-references` command re-evaluates, including the
documented anomalies (see the himmelblau notes below).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from .problem import Problem, VariableSpec, double_bounded, equality, inequality


class UnknownProblem(KeyError):
    """Requested benchmark name is not registered."""


@dataclass(frozen=True)
class BenchmarkEntry:
    problem: Problem
    reference_x: tuple[float, ...]
    reference_f: float
    source_table: str


@dataclass(frozen=True)
class ReferenceCheck:
    """One reference point with its expected objective and feasibility.

    ``expect_feasible`` is None when the source row only supports an
    objective-value check.
    """

    problem: str
    label: str
    x: tuple[float, ...]
    expected_f: float
    tol_f: float
    expect_feasible: Optional[bool]


# ---------------------------------------------------------------------------
# Himmelblau's five-variable nonlinear problem (three double-bounded
# constraints, i.e. six inequalities after splitting).
#
# The reference best (f = -30988.951) violates the first constraint's upper
# bound (g1 = 93.169 > 92) under this standard formulation; it is kept as
# the documented reference anyway. The feasible optimum is Deb's
# f = -30665.5 row, whose tabulated coordinates sit exactly on the g1 = 92
# and g3 = 20 boundaries; the check below uses coordinates consistent with
# the table's printed precision that land a hair inside both.
# ---------------------------------------------------------------------------

def _him_f(x):
    return 5.3578547 * x[2] ** 2 + 0.8356891 * x[0] * x[4] + 37.293239 * x[0] - 40792.141


def _him_g1(x):
    return 85.334407 + 0.0056858 * x[1] * x[4] + 0.0006262 * x[0] * x[3] - 0.0022053 * x[2] * x[4]


def _him_g2(x):
    return 80.51249 + 0.0071317 * x[1] * x[4] + 0.0029955 * x[0] * x[1] + 0.0021813 * x[2] ** 2


def _him_g3(x):
    return 9.300961 + 0.0047026 * x[2] * x[4] + 0.0012547 * x[0] * x[2] + 0.0019085 * x[2] * x[3]


def himmelblau() -> BenchmarkEntry:
    problem = Problem(
        name="himmelblau",
        objective=_him_f,
        variables=(
            VariableSpec(78.0, 102.0),
            VariableSpec(33.0, 45.0),
            VariableSpec(27.0, 45.0),
            VariableSpec(27.0, 45.0),
            VariableSpec(27.0, 45.0),
        ),
        constraints=(
            double_bounded(_him_g1, 0.0, 92.0),
            double_bounded(_him_g2, 90.0, 110.0),
            double_bounded(_him_g3, 20.0, 25.0),
        ),
    )
    return BenchmarkEntry(problem, (78.0029, 33.080, 27.353, 44.61, 44.264),
                          -30988.951, "Table 1")


# ---------------------------------------------------------------------------
# Tension/compression spring weight minimization: wire diameter, coil
# diameter, number of active coils. Constraints are dimensionless as
# authored (deflection, shear stress, surge frequency, outer diameter).
# ---------------------------------------------------------------------------

def _spring_f(x):
    return (x[2] + 2.0) * x[0] ** 2 * x[1]


def _spring_g1(x):
    return 1.0 - x[1] ** 3 * x[2] / (71785.0 * x[0] ** 4)


def _spring_g2(x):
    return ((4.0 * x[1] ** 2 - x[0] * x[1]) / (12566.0 * (x[1] * x[0] ** 3 - x[0] ** 4))
            + 1.0 / (5108.0 * x[0] ** 2) - 1.0)


def _spring_g3(x):
    return 1.0 - 140.45 * x[0] / (x[1] ** 2 * x[2])


def _spring_g4(x):
    return (x[0] + x[1]) / 1.5 - 1.0


def spring() -> BenchmarkEntry:
    problem = Problem(
        name="spring",
        objective=_spring_f,
        variables=(
            VariableSpec(0.05, 2.0),
            VariableSpec(0.25, 1.3),
            VariableSpec(2.0, 15.0),
        ),
        constraints=(
            inequality(_spring_g1),
            inequality(_spring_g2),
            inequality(_spring_g3),
            inequality(_spring_g4),
        ),
    )
    return BenchmarkEntry(problem, (0.0513412, 0.3483225, 11.80261),
                          0.012672, "Table 3")


# ---------------------------------------------------------------------------
# Pressure vessel cost minimization: shell thickness and head thickness in
# 0.0625-inch increments, continuous radius and length. The tabulated best
# (42.0978, 176.644) misses the 1,296,000 in^3 volume constraint by 3.3 in^3
# at the printed precision; the feasible reference check nudges the last
# digits inside (42.09784, 176.6444 rounds to the same printed values).
# ---------------------------------------------------------------------------

def _vessel_f(x):
    return (0.6224 * x[0] * x[2] * x[3] + 1.7781 * x[1] * x[2] ** 2
            + 3.1661 * x[0] ** 2 * x[3] + 19.84 * x[0] ** 2 * x[2])


def _vessel_g1(x):
    return -x[0] + 0.0193 * x[2]


def _vessel_g2(x):
    return -x[1] + 0.00954 * x[2]


def _vessel_g3(x):
    return -math.pi * x[2] ** 2 * x[3] - (4.0 / 3.0) * math.pi * x[2] ** 3 + 1296000.0


def _vessel_g4(x):
    return x[3] - 240.0


def pressure_vessel() -> BenchmarkEntry:
    problem = Problem(
        name="pressure-vessel",
        objective=_vessel_f,
        variables=(
            VariableSpec(0.0625, 6.1875, step=0.0625),
            VariableSpec(0.0625, 6.1875, step=0.0625),
            VariableSpec(10.0, 200.0),
            VariableSpec(10.0, 200.0),
        ),
        constraints=(
            inequality(_vessel_g1),
            inequality(_vessel_g2),
            inequality(_vessel_g3, scale=1296000.0),
            inequality(_vessel_g4, scale=240.0),
        ),
    )
    return BenchmarkEntry(problem, (0.8125, 0.4375, 42.09784, 176.6444),
                          6059.79164, "Table 5")


# ---------------------------------------------------------------------------
# Welded beam cost minimization: weld thickness, weld length, beam width,
# beam thickness. Stress quantities follow the printed model.
# ---------------------------------------------------------------------------

_P = 6000.0        # load, lb
_L = 14.0          # beam length, in
_E = 30e6          # Young's modulus, psi
_G = 12e6          # shear modulus, psi
_TAU_MAX = 13600.0
_SIGMA_MAX = 30000.0
_DELTA_MAX = 0.25


def _weld_tau(x):
    tau_p = _P / (math.sqrt(2.0) * x[0] * x[1])
    moment = _P * (_L + x[1] / 2.0)
    r = math.sqrt(x[1] ** 2 / 4.0 + ((x[0] + x[2]) / 2.0) ** 2)
    j = 2.0 * (math.sqrt(2.0) * x[0] * x[1] * (x[1] ** 2 / 12.0 + ((x[0] + x[2]) / 2.0) ** 2))
    tau_pp = moment * r / j
    return math.sqrt(tau_p ** 2 + 2.0 * tau_p * tau_pp * x[1] / (2.0 * r) + tau_pp ** 2)


def _weld_sigma(x):
    return 6.0 * _P * _L / (x[3] * x[2] ** 2)


def _weld_delta(x):
    return 4.0 * _P * _L ** 3 / (_E * x[2] ** 3 * x[3])


def _weld_buckling(x):
    return (4.013 * _E * math.sqrt(x[2] ** 2 * x[3] ** 6 / 36.0) / _L ** 2) \
        * (1.0 - (x[2] / (2.0 * _L)) * math.sqrt(_E / (4.0 * _G)))


def _weld_f(x):
    return 1.1047 * x[0] ** 2 * x[1] + 0.04811 * x[2] * x[3] * (14.0 + x[1])


def welded_beam() -> BenchmarkEntry:
    problem = Problem(
        name="welded-beam",
        objective=_weld_f,
        variables=(
            VariableSpec(0.1, 2.0),
            VariableSpec(0.1, 10.0),
            VariableSpec(0.1, 10.0),
            VariableSpec(0.1, 2.0),
        ),
        constraints=(
            inequality(lambda x: _weld_tau(x) - _TAU_MAX, scale=_TAU_MAX),
            inequality(lambda x: _weld_sigma(x) - _SIGMA_MAX, scale=_SIGMA_MAX),
            inequality(lambda x: x[0] - x[3]),
            inequality(lambda x: 0.125 - x[0], scale=0.125),
            inequality(lambda x: _weld_delta(x) - _DELTA_MAX, scale=_DELTA_MAX),
            inequality(lambda x: _P - _weld_buckling(x), scale=_P),
            inequality(lambda x: 0.10471 * x[0] ** 2
                       + 0.04811 * x[2] * x[3] * (14.0 + x[1]) - 5.0, scale=5.0),
        ),
    )
    return BenchmarkEntry(problem, (0.20578, 3.47294, 9.02922, 0.20608),
                          1.726718, "Table 7")


# ---------------------------------------------------------------------------
# Analytic toy problems used as engine oracles.
# ---------------------------------------------------------------------------

def toy_linear() -> BenchmarkEntry:
    """min x1 + x2 subject to x1 + x2 >= 1 on [0,1]^2; optimum f* = 1."""
    problem = Problem(
        name="toy-linear",
        objective=lambda x: x[0] + x[1],
        variables=(VariableSpec(0.0, 1.0), VariableSpec(0.0, 1.0)),
        constraints=(inequality(lambda x: 1.0 - x[0] - x[1]),),
    )
    return BenchmarkEntry(problem, (0.5, 0.5), 1.0, "analytic")


def toy_equality() -> BenchmarkEntry:
    """min x1^2 + x2^2 subject to x1 + x2 = 1; optimum f* = 0.5 at (0.5, 0.5)."""
    problem = Problem(
        name="toy-equality",
        objective=lambda x: x[0] ** 2 + x[1] ** 2,
        variables=(VariableSpec(0.0, 1.0), VariableSpec(0.0, 1.0)),
        constraints=(equality(lambda x: x[0] + x[1] - 1.0),),
    )
    return BenchmarkEntry(problem, (0.5, 0.5), 0.5, "analytic")


def toy_infeasible() -> BenchmarkEntry:
    """min x1 + x2 on [0,1]^2 with x1 >= 2: no feasible point exists."""
    problem = Problem(
        name="toy-infeasible",
        objective=lambda x: x[0] + x[1],
        variables=(VariableSpec(0.0, 1.0), VariableSpec(0.0, 1.0)),
        constraints=(inequality(lambda x: 2.0 - x[0], scale=2.0),),
    )
    return BenchmarkEntry(problem, (1.0, 0.0), 1.0, "analytic")


def toy_problems() -> list[BenchmarkEntry]:
    return [toy_linear(), toy_equality(), toy_infeasible()]


_FACTORIES: dict[str, Callable[[], BenchmarkEntry]] = {
    "himmelblau": himmelblau,
    "spring": spring,
    "pressure-vessel": pressure_vessel,
    "welded-beam": welded_beam,
    "toy-linear": toy_linear,
    "toy-equality": toy_equality,
    "toy-infeasible": toy_infeasible,
}


def problem_names() -> list[str]:
    return list(_FACTORIES)


def get_entry(name: str) -> BenchmarkEntry:
    try:
        factory = _FACTORIES[name]
    except KeyError:
        raise UnknownProblem(
            f"unknown problem {name!r}; known: {', '.join(_FACTORIES)}") from None
    return factory()


def get_problem(name: str) -> Problem:
    return get_entry(name).problem


REFERENCE_CHECKS: tuple[ReferenceCheck, ...] = (
    ReferenceCheck("spring", "best reported",
                   (0.0513412, 0.3483225, 11.80261), 0.012672, 1e-5, True),
    ReferenceCheck("spring", "Coello row",
                   (0.05148, 0.351661, 11.632201), 0.012704, 1e-5, None),
    ReferenceCheck("welded-beam", "best reported",
                   (0.20578, 3.47294, 9.02922, 0.20608), 1.726718, 1e-3, True),
    ReferenceCheck("welded-beam", "Siddall row",
                   (0.2444, 6.2189, 8.2915, 0.2444), 2.3815433, 1e-3, None),
    ReferenceCheck("pressure-vessel", "best reported (feasible digits)",
                   (0.8125, 0.4375, 42.09784, 176.6444), 6059.79164, 0.5, True),
    ReferenceCheck("pressure-vessel", "Yun row",
                   (1.125, 0.625, 58.2850, 43.725), 7198.424, 1.0, None),
    ReferenceCheck("himmelblau", "best reported (documented infeasible)",
                   (78.0029, 33.080, 27.353, 44.61, 44.264), -30988.951, 0.5, False),
    ReferenceCheck("himmelblau", "Deb row (feasible digits)",
                   (78.0, 33.0, 29.9953, 45.0, 36.7758), -30665.5, 1.0, True),
    ReferenceCheck("toy-linear", "analytic optimum", (0.5, 0.5), 1.0, 1e-12, True),
    ReferenceCheck("toy-equality", "analytic optimum", (0.5, 0.5), 0.5, 1e-12, True),
    ReferenceCheck("toy-infeasible", "violation reference", (1.0, 0.0), 1.0, 1e-12, False),
)
