"""Command line interface.

Four subcommands, all driven by a JSON config file:

    solve    one model (certain, probabilistic, or possibilistic)
    compare  all three matched models side by side
    sweep    compare along a one-dimensional parameter grid
    verify   internal consistency checks on a compare config

Exit codes: 0 success, 1 verification failure, 2 config or parse error,
3 solver failure, 4 mismatched return means. Identical configs produce
byte-identical primary output; the effective config (defaults applied)
is embedded in every JSON report so a run can be reproduced from its own
output. ``--plot`` renders a PNG next to the chosen output path.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

from .analysis import (ComparisonReport, build_report, BOUNDARY,
                       EXTRA_SAVING, FAILS, HOLDS, INDETERMINATE,
                       NEGATIVE, NO_EXTRA_SAVING, POSITIVE,
                       PredicateResult)
from .config import (CompareSetup, load_config, resolve_compare,
                     resolve_solve, resolve_sweep)
from .errors import (ConfigError, ConvergenceError, DomainError,
                     InvalidParameterError, MeanMatchError,
                     NoInteriorOptimumError, PossaveError)
from .fuzzy import CrispPoint
from .models import (CertainProblem, PossibilisticProblem,
                     ProbabilisticProblem, SavingProblem)
from .solver import solve_optimum
from .stochastic import DiscreteReturn

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_CONFIG = 2
EXIT_SOLVER = 3
EXIT_MEAN_MATCH = 4

PLOT_AUTO = "auto"

SWEEP_COLUMNS = (
    "variable", "value", "s_star", "s1_star", "s_dstar",
    "prec_prob", "prec_poss", "prec_cross",
    "R", "var_poss", "var_prob", "rp_at_Rs_star", "rp_at_Rs1_star",
    "rs_condition", "prop45", "corollary47",
    "sign_prec_prob", "sign_prec_poss", "sign_prec_cross",
)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def _predicate_json(predicate: PredicateResult) -> dict:
    return {"outcome": predicate.outcome, "lhs": predicate.lhs,
            "rhs": predicate.rhs}


def report_to_json(report: ComparisonReport) -> dict:
    return {
        "solutions": {
            "s_star": report.s_certain,
            "s1_star": report.s_probabilistic,
            "s_dstar": report.s_possibilistic,
        },
        "precautionary": {
            "prob": report.precautionary_prob,
            "poss": report.precautionary_poss,
            "cross": report.precautionary_cross,
        },
        "indicators": {
            "R": report.mean_return,
            "var_poss": report.var_poss,
            "var_prob": report.var_prob,
            "rp_at_Rs_star": report.prudence_at_certain,
            "rp_at_Rs1_star": report.prudence_at_probabilistic,
        },
        "predicates": {
            "rs_condition": _predicate_json(report.prudence_predicate),
            "prop45": _predicate_json(report.variance_gap_predicate),
            "corollary47": _predicate_json(report.cross_classification),
        },
        "signs": {
            "prec_prob": report.sign_prob,
            "prec_poss": report.sign_poss,
            "prec_cross": report.sign_cross,
        },
    }


def report_to_row(variable: str, value: float,
                  report: ComparisonReport) -> dict:
    return {
        "variable": variable,
        "value": value,
        "s_star": report.s_certain,
        "s1_star": report.s_probabilistic,
        "s_dstar": report.s_possibilistic,
        "prec_prob": report.precautionary_prob,
        "prec_poss": report.precautionary_poss,
        "prec_cross": report.precautionary_cross,
        "R": report.mean_return,
        "var_poss": report.var_poss,
        "var_prob": report.var_prob,
        "rp_at_Rs_star": report.prudence_at_certain,
        "rp_at_Rs1_star": report.prudence_at_probabilistic,
        "rs_condition": report.prudence_predicate.outcome,
        "prop45": report.variance_gap_predicate.outcome,
        "corollary47": report.cross_classification.outcome,
        "sign_prec_prob": report.sign_prob,
        "sign_prec_poss": report.sign_poss,
        "sign_prec_cross": report.sign_cross,
    }


def _dump_json(payload: dict) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _format_cell(value: object) -> object:
    # repr keeps full float precision and is stable across runs
    return repr(value) if isinstance(value, float) else value


def _rows_to_csv(rows: list[dict]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=SWEEP_COLUMNS,
                            lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({key: _format_cell(row[key])
                         for key in SWEEP_COLUMNS})
    return buffer.getvalue()


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)


def _plot_target(args: argparse.Namespace, default_stem: str) -> str | None:
    if args.plot is None:
        return None
    if args.plot != PLOT_AUTO:
        return args.plot
    if args.out:
        stem = args.out.rsplit(".", 1)[0] if "." in args.out else args.out
        return stem + ".png"
    return default_stem + ".png"


def _note(message: str) -> None:
    print(message, file=sys.stderr)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _cmd_solve(args: argparse.Namespace) -> int:
    setup = resolve_solve(load_config(args.config), nodes=args.nodes,
                          seed=args.seed)
    numerics = setup.numerics
    result = solve_optimum(setup.problem, tol_s=numerics["tol_s"],
                           tol_f=numerics["tol_f"],
                           max_iter=numerics["max_iter"])
    payload = {
        "config_effective": setup.effective,
        "solution": {
            "s_opt": result.s_opt,
            "foc_residual": result.foc_residual,
            "iterations": result.iterations,
            "bracket": [result.bracket[0], result.bracket[1]],
            "converged": result.converged,
            "total_utility": setup.problem.total_utility(result.s_opt),
        },
    }
    _emit(_dump_json(payload), args.out)
    target = _plot_target(args, "solve")
    if target is not None:
        from .figures import render_solve_figure
        render_solve_figure(setup.problem, result.s_opt, target)
        _note(f"figure written to {target}")
    return EXIT_OK


def _build_problems(setup: CompareSetup) -> tuple[
        CertainProblem, ProbabilisticProblem, PossibilisticProblem]:
    certain = CertainProblem(setup.income, setup.utility, setup.mean_return,
                             setup.rule)
    probabilistic = ProbabilisticProblem(setup.income, setup.utility,
                                         setup.distribution, setup.rule)
    possibilistic = PossibilisticProblem(setup.income, setup.utility,
                                         setup.weighting, setup.fuzzy_return,
                                         setup.rule)
    return certain, probabilistic, possibilistic


def _report_for(setup: CompareSetup) -> ComparisonReport:
    numerics = setup.numerics
    return build_report(setup.income, setup.utility, setup.mean_return,
                        setup.distribution, setup.weighting,
                        setup.fuzzy_return, setup.rule,
                        tol_s=numerics["tol_s"], tol_f=numerics["tol_f"],
                        max_iter=numerics["max_iter"],
                        band=numerics["tie_band"])


def _cmd_compare(args: argparse.Namespace) -> int:
    setup = resolve_compare(load_config(args.config), nodes=args.nodes,
                            seed=args.seed)
    report = _report_for(setup)
    payload = {"config_effective": setup.effective}
    payload.update(report_to_json(report))
    _emit(_dump_json(payload), args.out)
    target = _plot_target(args, "compare")
    if target is not None:
        from .figures import render_compare_figure
        render_compare_figure(*_build_problems(setup), report, target)
        _note(f"figure written to {target}")
    return EXIT_OK


def _cmd_sweep(args: argparse.Namespace) -> int:
    sweep = resolve_sweep(load_config(args.config), nodes=args.nodes,
                          seed=args.seed)
    rows = [report_to_row(sweep.variable, value, _report_for(setup))
            for value, setup in zip(sweep.values, sweep.setups)]
    if args.format == "csv":
        _emit(_rows_to_csv(rows), args.out)
    else:
        payload = {
            "config_effective": sweep.effective,
            "variable": sweep.variable,
            "rows": rows,
        }
        _emit(_dump_json(payload), args.out)
    target = _plot_target(args, "sweep")
    if target is not None:
        from .figures import render_sweep_figure
        render_sweep_figure(sweep.variable, list(sweep.values), rows, target)
        _note(f"figure written to {target}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _mixed_gap(candidate: float, reference: float) -> float:
    """Absolute difference scaled down by the reference magnitude, so the
    check stays meaningful when utility levels are huge (gamma close to 1
    pushes CRRA levels toward 1e12)."""
    return abs(candidate - reference) / max(1.0, abs(reference))


def _grid(lo: float, hi: float, count: int) -> list[float]:
    return [lo + (hi - lo) * i / (count - 1) for i in range(count)]


def _check_degeneracy(setup: CompareSetup) -> tuple[bool, str]:
    certain = CertainProblem(setup.income, setup.utility, setup.mean_return,
                             setup.rule)
    collapsed = (
        PossibilisticProblem(setup.income, setup.utility, setup.weighting,
                             CrispPoint(setup.mean_return), setup.rule),
        ProbabilisticProblem(setup.income, setup.utility,
                             DiscreteReturn(((setup.mean_return, 1.0),)),
                             setup.rule),
    )
    lo, hi = certain.feasible_interval()
    worst = 0.0
    for saving in _grid(lo, hi, 20):
        for probe in ("total_utility", "foc", "foc_derivative"):
            reference = getattr(certain, probe)(saving)
            for problem in collapsed:
                worst = max(worst,
                            _mixed_gap(getattr(problem, probe)(saving),
                                       reference))
    s_certain = solve_optimum(certain).s_opt
    opt_gap = max(abs(solve_optimum(problem).s_opt - s_certain)
                  for problem in collapsed)
    ok = worst <= 1e-12 and opt_gap <= 1e-10
    return ok, (f"max value gap {worst!r}, max optimum gap {opt_gap!r}")


def _check_concavity(problems: Sequence[SavingProblem]) -> tuple[bool, str]:
    worst = -float("inf")
    for problem in problems:
        lo, hi = problem.feasible_interval()
        for saving in _grid(lo, hi, 100):
            worst = max(worst, problem.foc_derivative(saving))
    return worst < 0.0, f"max foc_derivative {worst!r}"


def _check_residuals(problems: Sequence[SavingProblem],
                     tol_f: float) -> tuple[bool, str]:
    worst = 0.0
    for problem in problems:
        result = solve_optimum(problem, tol_f=tol_f)
        worst = max(worst, abs(problem.foc(result.s_opt)))
    return worst <= tol_f, f"max |foc residual| {worst!r}"


def _conflicts(report: ComparisonReport) -> list[str]:
    """Decisive predicate vs decisive solved sign, pointing opposite ways."""
    found = []
    prudence = report.prudence_predicate.outcome
    for sign, label in ((report.sign_prob, "prec_prob"),
                        (report.sign_poss, "prec_poss")):
        if prudence == HOLDS and sign == NEGATIVE:
            found.append(f"rs_condition holds but {label} is negative")
        if prudence == FAILS and sign == POSITIVE:
            found.append(f"rs_condition fails but {label} is positive")
    gap = report.variance_gap_predicate.outcome
    if gap == HOLDS and report.sign_cross == NEGATIVE:
        found.append("prop45 positive but prec_cross is negative")
    if gap == FAILS and report.sign_cross == POSITIVE:
        found.append("prop45 negative but prec_cross is positive")
    classify = report.cross_classification.outcome
    if classify == EXTRA_SAVING and report.sign_cross == NEGATIVE:
        found.append("corollary47 extra_saving but prec_cross is negative")
    if classify == NO_EXTRA_SAVING and report.sign_cross == POSITIVE:
        found.append("corollary47 no_extra_saving but prec_cross is positive")
    return found


def _cmd_verify(args: argparse.Namespace) -> int:
    setup = resolve_compare(load_config(args.config), nodes=args.nodes,
                            seed=args.seed)
    problems = _build_problems(setup)
    report = _report_for(setup)

    checks: list[tuple[str, bool, str]] = []
    ok, detail = _check_degeneracy(setup)
    checks.append(("degeneracy_collapse", ok, detail))
    ok, detail = _check_concavity(problems)
    checks.append(("concavity", ok, detail))
    ok, detail = _check_residuals(problems, setup.numerics["tol_f"])
    checks.append(("foc_residual", ok, detail))
    conflicts = _conflicts(report)
    checks.append(("predicate_vs_sign", not conflicts,
                   "; ".join(conflicts) if conflicts
                   else "no decisive disagreement"))

    lines = [f"check {name}: {'ok' if passed else 'FAIL'} ({detail})"
             for name, passed, detail in checks]
    failed = [name for name, passed, _ in checks if not passed]
    if failed:
        lines.append(f"verify: FAIL (first failing check: {failed[0]})")
    else:
        lines.append("verify: PASS")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_VERIFY_FAILED if failed else EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing and dispatch
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="possave",
        description="Two-period optimal saving under certain, random, "
                    "and fuzzy interest rates.")
    commands = parser.add_subparsers(dest="command", required=True)

    def add_common(sub: argparse.ArgumentParser, with_plot: bool) -> None:
        sub.add_argument("--config", required=True,
                         help="path to a JSON config file")
        sub.add_argument("--out", default=None,
                         help="write the primary output here instead of "
                              "stdout")
        sub.add_argument("--nodes", type=int, default=None,
                         help="override the quadrature node count")
        sub.add_argument("--seed", type=int, default=None,
                         help="seed recorded for sampling oracles")
        if with_plot:
            sub.add_argument("--plot", nargs="?", const=PLOT_AUTO,
                             default=None, metavar="PATH",
                             help="also render a PNG figure (default path "
                                  "derives from --out)")

    solve = commands.add_parser("solve", help="solve a single model")
    add_common(solve, with_plot=True)
    compare = commands.add_parser("compare",
                                  help="solve and compare all three models")
    add_common(compare, with_plot=True)
    sweep = commands.add_parser("sweep", help="compare along a grid")
    add_common(sweep, with_plot=True)
    sweep.add_argument("--format", choices=("csv", "json"), default="csv",
                       help="sweep output format (default csv)")
    verify = commands.add_parser("verify",
                                 help="run internal consistency checks")
    add_common(verify, with_plot=False)
    return parser


_HANDLERS = {
    "solve": _cmd_solve,
    "compare": _cmd_compare,
    "sweep": _cmd_sweep,
    "verify": _cmd_verify,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else EXIT_OK
    try:
        return _HANDLERS[args.command](args)
    except MeanMatchError as exc:
        _note(f"error: {exc}")
        return EXIT_MEAN_MATCH
    except (NoInteriorOptimumError, ConvergenceError) as exc:
        _note(f"solver error: {exc}")
        return EXIT_SOLVER
    except (ConfigError, InvalidParameterError, DomainError) as exc:
        _note(f"config error: {exc}")
        return EXIT_CONFIG
    except PossaveError as exc:
        _note(f"error: {exc}")
        return EXIT_CONFIG
    except OSError as exc:
        _note(f"i/o error: {exc}")
        return EXIT_CONFIG


def console_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_entry()
