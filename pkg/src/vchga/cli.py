"""Command-line interface.

Subcommands:
  run                execute a multi-run experiment and write CSV/JSON results
  list-problems      print the registered benchmark names
  verify-references  re-evaluate every published reference point

Option precedence for `run`: command-line flags override the optional
key=value config file, which overrides the built-in defaults (the defaults
reproduce the reference protocol: 20 runs of a 100-individual population
with 1 elite, 94 crossover children, 5 mutants, 500 generations max).
The VCH_SEED environment variable, when set, overrides any seed.

Exit codes: 0 success, 1 validation/usage error, 2 runtime error.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

import numpy as np

from .benchmarks import REFERENCE_CHECKS, UnknownProblem, get_problem, problem_names
from .engine import GAConfig
from .experiment import ExperimentConfig, emit_results, run_experiment
from .problem import EvalCounter, evaluate_individual

_DEFAULTS = {
    "handler": "vch",
    "runs": 20,
    "seed": 42,
    "pop": 100,
    "elites": 1,
    "cross": 94,
    "mut": None,  # derived as pop - elites - cross when not given
    "max_gen": 500,
    "max_evals": 50_000,
    "tol": 1e-6,
    "patience": 25,
    "tournament": 2,
    "feasible_init": False,
    "parallel": False,
    "out": "./results",
}

_OPTION_TYPES = {
    "problem": str,
    "handler": str,
    "runs": int,
    "seed": int,
    "pop": int,
    "elites": int,
    "cross": int,
    "mut": int,
    "max_gen": int,
    "max_evals": int,
    "tol": float,
    "patience": int,
    "tournament": int,
    "feasible_init": bool,
    "parallel": bool,
    "out": str,
}


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors by default; the contract is 1
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _build_parser() -> _Parser:
    parser = _Parser(prog="vchga", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run a seeded multi-run experiment")
    run_p.add_argument("--problem", help="benchmark name (see list-problems)")
    run_p.add_argument("--handler", choices=["vch", "static-penalty", "dynamic-penalty", "deb"])
    run_p.add_argument("--runs", type=int)
    run_p.add_argument("--seed", type=int)
    run_p.add_argument("--pop", type=int)
    run_p.add_argument("--elites", type=int)
    run_p.add_argument("--cross", type=int)
    run_p.add_argument("--mut", type=int)
    run_p.add_argument("--max-gen", type=int, dest="max_gen")
    run_p.add_argument("--max-evals", type=int, dest="max_evals")
    run_p.add_argument("--tol", type=float)
    run_p.add_argument("--patience", type=int)
    run_p.add_argument("--tournament", type=int)
    run_p.add_argument("--feasible-init", action="store_true", default=None,
                       dest="feasible_init")
    run_p.add_argument("--parallel", action="store_true", default=None)
    run_p.add_argument("--out")
    run_p.add_argument("--config", help="key=value settings file")

    sub.add_parser("list-problems", help="print registered benchmark names")
    sub.add_parser("verify-references", help="re-evaluate reference points")
    return parser


def _parse_bool(text: str) -> bool:
    value = text.strip().lower()
    if value in ("true", "1", "yes", "on"):
        return True
    if value in ("false", "0", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _read_config_file(path: str) -> dict:
    settings = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {raw.strip()!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in _OPTION_TYPES:
                raise ValueError(f"{path}:{lineno}: unknown setting {key!r}")
            kind = _OPTION_TYPES[key]
            settings[key] = _parse_bool(value) if kind is bool else kind(value)
    return settings


def resolve_experiment(args: argparse.Namespace) -> tuple[ExperimentConfig, str]:
    """Merge defaults, config file and flags into (ExperimentConfig, out_dir)."""
    merged = dict(_DEFAULTS)
    merged["problem"] = None
    if args.config:
        merged.update(_read_config_file(args.config))
    for key in _OPTION_TYPES:
        flag = getattr(args, key, None)
        if flag is not None:
            merged[key] = flag
    if os.environ.get("VCH_SEED"):
        merged["seed"] = int(os.environ["VCH_SEED"])

    if merged["problem"] is None:
        raise ValueError("--problem is required (see `vchga list-problems`)")
    if merged["mut"] is None:
        merged["mut"] = merged["pop"] - merged["elites"] - merged["cross"]

    ga = GAConfig(
        pop_num=merged["pop"],
        n_elite=merged["elites"],
        n_cross=merged["cross"],
        n_mut=merged["mut"],
        max_generations=merged["max_gen"],
        stop_tolerance=merged["tol"],
        stop_patience=merged["patience"],
        max_evaluations=merged["max_evals"],
        handler=merged["handler"],
        feasible_init=merged["feasible_init"],
        tournament_size=merged["tournament"],
    )
    return ExperimentConfig(
        problem_name=merged["problem"],
        ga=ga,
        num_runs=merged["runs"],
        base_seed=merged["seed"],
        parallel=merged["parallel"],
    ), merged["out"]


def _cmd_run(args) -> int:
    cfg, out_dir = resolve_experiment(args)
    results, summary = run_experiment(cfg)
    paths = emit_results(results, summary, out_dir, cfg)
    tag = "f" if summary.feasible_run_count else "cv (no feasible runs)"
    print(f"{cfg.problem_name} [{cfg.ga.handler}] {cfg.num_runs} runs: "
          f"best {tag}={summary.best_f:.6g} mean={summary.mean_f:.6g} "
          f"median={summary.median_f:.6g} worst={summary.worst_f:.6g} "
          f"std={summary.std_f:.3g} evals={summary.mean_evaluations:.0f} "
          f"feasible_runs={summary.feasible_run_count}/{cfg.num_runs}")
    for name, path in paths.items():
        print(f"  wrote {name}: {path}")
    return 0


def _cmd_verify_references() -> int:
    failures = 0
    for check in REFERENCE_CHECKS:
        problem = get_problem(check.problem)
        ind = evaluate_individual(problem, np.array(check.x, dtype=float), EvalCounter())
        ok = math.isfinite(ind.f) and abs(ind.f - check.expected_f) <= check.tol_f
        detail = f"f={ind.f:.7g} expected {check.expected_f:.7g} +/- {check.tol_f:g}"
        if check.expect_feasible is not None:
            ok = ok and ind.feasible == check.expect_feasible
            detail += f", feasible={ind.feasible} expected {check.expect_feasible}"
        status = "PASS" if ok else "FAIL"
        failures += 0 if ok else 1
        print(f"{status} {check.problem} ({check.label}): {detail}")
    if failures:
        print(f"{failures} reference check(s) failed")
        return 1
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "list-problems":
            for name in problem_names():
                print(name)
            return 0
        if args.command == "verify-references":
            return _cmd_verify_references()
        return _cmd_run(args)
    except (UnknownProblem, ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # pragma: no cover - defensive
        print(f"runtime error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
