"""Run configuration: JSON schema, validation, canonicalization.

A config is a JSON object. Common keys:

    y0         positive income (required)
    utility    {"kind": "crra", "gamma": g} | {"kind": "log"}
               | {"kind": "cara", "coefficient": a}
               | {"kind": "quadratic", "curvature": b}
    weighting  {"kind": "uniform"} | {"kind": "power", "exponent": p}
               (default: power with exponent 1)
    numerics   nodes / tol_s / tol_f / max_iter / tie_band / seed,
               all optional, see NUMERIC_DEFAULTS

The solve command adds a single ``risk`` description; compare, sweep,
and verify describe all three models at once, either explicitly
(``mean_return`` + ``random_return`` + ``fuzzy_return``) or through the
matched-interval shorthand ``returns: {lower, upper}``, which expands to
a crisp-interval fuzzy return and a uniform random return on the same
interval with mean halfway. Sweep adds a ``sweep`` block with the grid.

``effective_*_config`` return the fully explicit form of a config
(defaults applied, shorthand expanded). Re-parsing an effective config
is a fixed point, which is what makes reports reproducible from the
config they embed.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Any

from .errors import ConfigError
from .fuzzy import (CrispInterval, CrispPoint, FuzzyNumber, SampledNumber,
                    TrapezoidalNumber, TriangularNumber, WeightingFunction)
from .models import (CertainProblem, PossibilisticProblem,
                     ProbabilisticProblem, SavingProblem)
from .quadrature import GaussLegendreRule
from .stochastic import DiscreteReturn, RandomReturn, UniformReturn
from .utility import (CARAUtility, CRRAUtility, LogUtility,
                      QuadraticUtility, UtilityFunction, crra_family)

NUMERIC_DEFAULTS: dict[str, Any] = {
    "nodes": 64,
    "tol_s": 1e-12,
    "tol_f": 1e-10,
    "max_iter": 200,
    "tie_band": 1e-9,
    "seed": 0,
}

SWEEP_VARIABLES = ("gamma", "spread", "y0", "R")


# ---------------------------------------------------------------------------
# low-level readers
# ---------------------------------------------------------------------------

def _require_object(value: Any, where: str) -> dict:
    if not isinstance(value, dict):
        raise ConfigError(f"{where} must be a JSON object, got "
                          f"{type(value).__name__}")
    return value


def _reject_unknown(obj: dict, allowed: tuple[str, ...], where: str) -> None:
    unknown = sorted(set(obj) - set(allowed))
    if unknown:
        raise ConfigError(f"unknown key(s) {unknown} in {where}; "
                          f"allowed: {sorted(allowed)}")


def _number(obj: dict, key: str, where: str) -> float:
    if key not in obj:
        raise ConfigError(f"missing key {key!r} in {where}")
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where}.{key} must be a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise ConfigError(f"{where}.{key} must be finite, got {value}")
    return value


def _integer(obj: dict, key: str, where: str) -> int:
    if key not in obj:
        raise ConfigError(f"missing key {key!r} in {where}")
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{where}.{key} must be an integer, got {value!r}")
    return value


def _kind(obj: dict, key: str, where: str, choices: tuple[str, ...]) -> str:
    if key not in obj:
        raise ConfigError(f"missing key {key!r} in {where}")
    value = obj[key]
    if value not in choices:
        raise ConfigError(f"{where}.{key} must be one of {list(choices)}, "
                          f"got {value!r}")
    return value


def load_config(path: str) -> dict:
    """Read and parse a JSON config file."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            raw = json.load(handle)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path!r} is not valid JSON: {exc}") from exc
    return _require_object(raw, "config")


# ---------------------------------------------------------------------------
# component parsers
# ---------------------------------------------------------------------------

def parse_utility(obj: Any, where: str = "utility") -> UtilityFunction:
    obj = _require_object(obj, where)
    kind = _kind(obj, "kind", where, ("crra", "log", "cara", "quadratic"))
    if kind == "crra":
        _reject_unknown(obj, ("kind", "gamma"), where)
        return crra_family(_number(obj, "gamma", where))
    if kind == "log":
        _reject_unknown(obj, ("kind",), where)
        return LogUtility()
    if kind == "cara":
        _reject_unknown(obj, ("kind", "coefficient"), where)
        return CARAUtility(_number(obj, "coefficient", where))
    _reject_unknown(obj, ("kind", "curvature"), where)
    return QuadraticUtility(_number(obj, "curvature", where))


def utility_to_json(utility: UtilityFunction) -> dict:
    if isinstance(utility, CRRAUtility):
        return {"kind": "crra", "gamma": utility.gamma}
    if isinstance(utility, LogUtility):
        return {"kind": "log"}
    if isinstance(utility, CARAUtility):
        return {"kind": "cara", "coefficient": utility.coefficient}
    if isinstance(utility, QuadraticUtility):
        return {"kind": "quadratic", "curvature": utility.curvature}
    raise ConfigError(f"cannot serialize utility {utility!r}")


def parse_weighting(obj: Any, where: str = "weighting") -> WeightingFunction:
    if obj is None:
        return WeightingFunction.power(1.0)
    obj = _require_object(obj, where)
    kind = _kind(obj, "kind", where, ("uniform", "power"))
    if kind == "uniform":
        _reject_unknown(obj, ("kind",), where)
        return WeightingFunction.uniform()
    _reject_unknown(obj, ("kind", "exponent"), where)
    return WeightingFunction.power(_number(obj, "exponent", where))


def weighting_to_json(weighting: WeightingFunction) -> dict:
    if weighting.kind == "uniform":
        return {"kind": "uniform"}
    return {"kind": "power", "exponent": weighting.exponent}


def parse_fuzzy(obj: Any, where: str) -> FuzzyNumber:
    obj = _require_object(obj, where)
    shape = _kind(obj, "shape", where,
                  ("crisp_point", "crisp_interval", "triangular",
                   "trapezoidal", "sampled"))
    if shape == "crisp_point":
        _reject_unknown(obj, ("shape", "value"), where)
        return CrispPoint(_number(obj, "value", where))
    if shape == "crisp_interval":
        _reject_unknown(obj, ("shape", "lower", "upper"), where)
        return CrispInterval(_number(obj, "lower", where),
                             _number(obj, "upper", where))
    if shape == "triangular":
        _reject_unknown(obj, ("shape", "peak", "left_spread",
                              "right_spread"), where)
        return TriangularNumber(_number(obj, "peak", where),
                                _number(obj, "left_spread", where),
                                _number(obj, "right_spread", where))
    if shape == "trapezoidal":
        _reject_unknown(obj, ("shape", "core_lower", "core_upper",
                              "left_spread", "right_spread"), where)
        return TrapezoidalNumber(_number(obj, "core_lower", where),
                                 _number(obj, "core_upper", where),
                                 _number(obj, "left_spread", where),
                                 _number(obj, "right_spread", where))
    _reject_unknown(obj, ("shape", "levels", "lower", "upper"), where)
    for key in ("levels", "lower", "upper"):
        if key not in obj or not isinstance(obj[key], list):
            raise ConfigError(f"{where}.{key} must be a list of numbers")
    return SampledNumber(tuple(obj["levels"]), tuple(obj["lower"]),
                         tuple(obj["upper"]))


def fuzzy_to_json(number: FuzzyNumber) -> dict:
    if isinstance(number, CrispPoint):
        return {"shape": "crisp_point", "value": number.value}
    if isinstance(number, CrispInterval):
        return {"shape": "crisp_interval", "lower": number.lower,
                "upper": number.upper}
    if isinstance(number, TriangularNumber):
        return {"shape": "triangular", "peak": number.peak,
                "left_spread": number.left_spread,
                "right_spread": number.right_spread}
    if isinstance(number, TrapezoidalNumber):
        return {"shape": "trapezoidal", "core_lower": number.core_lower,
                "core_upper": number.core_upper,
                "left_spread": number.left_spread,
                "right_spread": number.right_spread}
    if isinstance(number, SampledNumber):
        return {"shape": "sampled", "levels": list(number.levels),
                "lower": list(number.lower), "upper": list(number.upper)}
    raise ConfigError(f"cannot serialize fuzzy number {number!r}")


def parse_distribution(obj: Any, where: str) -> RandomReturn:
    obj = _require_object(obj, where)
    kind = _kind(obj, "kind", where, ("uniform", "discrete"))
    if kind == "uniform":
        _reject_unknown(obj, ("kind", "lower", "upper"), where)
        return UniformReturn(_number(obj, "lower", where),
                             _number(obj, "upper", where))
    _reject_unknown(obj, ("kind", "atoms"), where)
    atoms = obj.get("atoms")
    if not isinstance(atoms, list) or not all(
            isinstance(row, list) and len(row) == 2 for row in atoms):
        raise ConfigError(f"{where}.atoms must be a list of "
                          f"[value, probability] pairs")
    return DiscreteReturn(tuple((v, p) for v, p in atoms))


def distribution_to_json(distribution: RandomReturn) -> dict:
    if isinstance(distribution, UniformReturn):
        return {"kind": "uniform", "lower": distribution.lower,
                "upper": distribution.upper}
    if isinstance(distribution, DiscreteReturn):
        return {"kind": "discrete",
                "atoms": [[v, p] for v, p in distribution.atoms]}
    raise ConfigError(f"cannot serialize distribution {distribution!r}")


def parse_numerics(obj: Any, *, nodes: int | None = None,
                   seed: int | None = None) -> dict:
    """Numeric settings with defaults; CLI overrides win over the file."""
    merged = dict(NUMERIC_DEFAULTS)
    if obj is not None:
        obj = _require_object(obj, "numerics")
        _reject_unknown(obj, tuple(NUMERIC_DEFAULTS), "numerics")
        for key in ("tol_s", "tol_f", "tie_band"):
            if key in obj:
                merged[key] = _number(obj, key, "numerics")
        for key in ("nodes", "max_iter", "seed"):
            if key in obj:
                merged[key] = _integer(obj, key, "numerics")
    if nodes is not None:
        merged["nodes"] = nodes
    if seed is not None:
        merged["seed"] = seed
    if merged["nodes"] < 2:
        raise ConfigError(f"numerics.nodes must be >= 2, got "
                          f"{merged['nodes']}")
    if merged["max_iter"] < 1:
        raise ConfigError("numerics.max_iter must be >= 1")
    if merged["seed"] < 0:
        raise ConfigError("numerics.seed must be >= 0")
    for key in ("tol_s", "tol_f"):
        if not merged[key] > 0:
            raise ConfigError(f"numerics.{key} must be positive")
    if merged["tie_band"] < 0:
        raise ConfigError("numerics.tie_band must be >= 0")
    return merged


# ---------------------------------------------------------------------------
# command-level resolution
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SolveSetup:
    problem: SavingProblem
    numerics: dict
    effective: dict


@dataclass(frozen=True)
class CompareSetup:
    income: float
    utility: UtilityFunction
    weighting: WeightingFunction
    mean_return: float
    distribution: RandomReturn
    fuzzy_return: FuzzyNumber
    rule: GaussLegendreRule
    numerics: dict
    effective: dict


SOLVE_KEYS = ("y0", "utility", "weighting", "risk", "numerics")

COMPARE_KEYS = ("y0", "utility", "weighting", "returns", "mean_return",
                "random_return", "fuzzy_return", "numerics")

SWEEP_KEYS = COMPARE_KEYS + ("sweep",)


def resolve_solve(config: dict, *, nodes: int | None = None,
                  seed: int | None = None) -> SolveSetup:
    _reject_unknown(config, SOLVE_KEYS, "config")
    income = _number(config, "y0", "config")
    utility = parse_utility(config.get("utility"))
    weighting = parse_weighting(config.get("weighting"))
    numerics = parse_numerics(config.get("numerics"), nodes=nodes, seed=seed)
    rule = GaussLegendreRule(numerics["nodes"])

    risk = _require_object(config.get("risk"), "risk")
    kind = _kind(risk, "kind", "risk",
                 ("certain", "probabilistic", "possibilistic"))
    if kind == "certain":
        _reject_unknown(risk, ("kind", "rate"), "risk")
        rate = _number(risk, "rate", "risk")
        problem: SavingProblem = CertainProblem(income, utility, rate, rule)
        risk_json: dict = {"kind": "certain", "rate": rate}
    elif kind == "probabilistic":
        _reject_unknown(risk, ("kind", "distribution"), "risk")
        distribution = parse_distribution(risk.get("distribution"),
                                          "risk.distribution")
        problem = ProbabilisticProblem(income, utility, distribution, rule)
        risk_json = {"kind": "probabilistic",
                     "distribution": distribution_to_json(distribution)}
    else:
        _reject_unknown(risk, ("kind", "fuzzy"), "risk")
        number = parse_fuzzy(risk.get("fuzzy"), "risk.fuzzy")
        problem = PossibilisticProblem(income, utility, weighting, number,
                                       rule)
        risk_json = {"kind": "possibilistic", "fuzzy": fuzzy_to_json(number)}

    effective = {
        "y0": income,
        "utility": utility_to_json(utility),
        "weighting": weighting_to_json(weighting),
        "risk": risk_json,
        "numerics": dict(numerics),
    }
    return SolveSetup(problem=problem, numerics=numerics, effective=effective)


def resolve_compare(config: dict, *, nodes: int | None = None,
                    seed: int | None = None,
                    extra_keys: tuple[str, ...] = ()) -> CompareSetup:
    _reject_unknown(config, COMPARE_KEYS + extra_keys, "config")
    income = _number(config, "y0", "config")
    utility = parse_utility(config.get("utility"))
    weighting = parse_weighting(config.get("weighting"))
    numerics = parse_numerics(config.get("numerics"), nodes=nodes, seed=seed)
    rule = GaussLegendreRule(numerics["nodes"])

    has_shorthand = "returns" in config
    has_explicit = any(key in config for key in
                       ("mean_return", "random_return", "fuzzy_return"))
    if has_shorthand and has_explicit:
        raise ConfigError("give either returns (shorthand) or the explicit "
                          "mean_return/random_return/fuzzy_return triple, "
                          "not both")
    if has_shorthand:
        shorthand = _require_object(config["returns"], "returns")
        _reject_unknown(shorthand, ("lower", "upper"), "returns")
        lower = _number(shorthand, "lower", "returns")
        upper = _number(shorthand, "upper", "returns")
        fuzzy_return: FuzzyNumber = CrispInterval(lower, upper)
        distribution: RandomReturn = UniformReturn(lower, upper)
        mean_return = 0.5 * (lower + upper)
    elif has_explicit:
        mean_return = _number(config, "mean_return", "config")
        distribution = parse_distribution(config.get("random_return"),
                                          "random_return")
        fuzzy_return = parse_fuzzy(config.get("fuzzy_return"), "fuzzy_return")
    else:
        raise ConfigError("config describes no returns: expected the "
                          "returns shorthand or the explicit triple")
    if not mean_return > 0:
        raise ConfigError(f"mean return must be positive, got {mean_return}")

    effective = {
        "y0": income,
        "utility": utility_to_json(utility),
        "weighting": weighting_to_json(weighting),
        "mean_return": mean_return,
        "random_return": distribution_to_json(distribution),
        "fuzzy_return": fuzzy_to_json(fuzzy_return),
        "numerics": dict(numerics),
    }
    return CompareSetup(income=income, utility=utility, weighting=weighting,
                        mean_return=mean_return, distribution=distribution,
                        fuzzy_return=fuzzy_return, rule=rule,
                        numerics=numerics, effective=effective)


@dataclass(frozen=True)
class SweepSetup:
    variable: str
    values: tuple[float, ...]
    setups: tuple[CompareSetup, ...]
    effective: dict


def _sweep_grid(start: float, stop: float, steps: int) -> tuple[float, ...]:
    if steps < 2:
        raise ConfigError(f"sweep.steps must be >= 2, got {steps}")
    pitch = (stop - start) / (steps - 1)
    values = tuple(start + i * pitch for i in range(steps - 1)) + (stop,)
    if any(not math.isfinite(v) for v in values):
        raise ConfigError("sweep grid contains non-finite values")
    return values


def _apply_sweep_value(base: dict, variable: str, value: float) -> dict:
    derived = {key: base[key] for key in base if key != "sweep"}
    if variable == "gamma":
        utility = derived.get("utility")
        if not (isinstance(utility, dict)
                and utility.get("kind") in ("crra", "log")):
            raise ConfigError("sweeping gamma requires a crra (or log) "
                              "utility in the base config")
        derived["utility"] = {"kind": "crra", "gamma": value}
        return derived
    if variable == "y0":
        derived["y0"] = value
        return derived
    # spread and R reshape the matched interval, so they need the shorthand
    if "returns" not in derived:
        raise ConfigError(f"sweeping {variable!r} requires the returns "
                          f"shorthand in the base config")
    shorthand = _require_object(derived["returns"], "returns")
    lower = _number(shorthand, "lower", "returns")
    upper = _number(shorthand, "upper", "returns")
    if variable == "spread":
        center = 0.5 * (lower + upper)
        derived["returns"] = {"lower": center - 0.5 * value,
                              "upper": center + 0.5 * value}
    else:  # R: translate the interval, keeping its width
        width = upper - lower
        derived["returns"] = {"lower": value - 0.5 * width,
                              "upper": value + 0.5 * width}
    return derived


def resolve_sweep(config: dict, *, nodes: int | None = None,
                  seed: int | None = None) -> SweepSetup:
    _reject_unknown(config, SWEEP_KEYS, "config")
    sweep = _require_object(config.get("sweep"), "sweep")
    _reject_unknown(sweep, ("variable", "start", "stop", "steps"), "sweep")
    variable = _kind(sweep, "variable", "sweep", SWEEP_VARIABLES)
    start = _number(sweep, "start", "sweep")
    stop = _number(sweep, "stop", "sweep")
    steps = _integer(sweep, "steps", "sweep")
    values = _sweep_grid(start, stop, steps)

    # validate every grid point before any work happens
    setups = tuple(
        resolve_compare(_apply_sweep_value(config, variable, value),
                        nodes=nodes, seed=seed)
        for value in values)

    base = {key: config[key] for key in config if key != "sweep"}
    base_effective = dict(resolve_compare(base, nodes=nodes,
                                          seed=seed).effective)
    if "returns" in base:
        # keep the shorthand in the echoed config: spread and R sweeps
        # are only expressible through it, so expanding it would break
        # the re-run round trip
        shorthand = _require_object(base["returns"], "returns")
        base_effective = {
            "y0": base_effective["y0"],
            "utility": base_effective["utility"],
            "weighting": base_effective["weighting"],
            "returns": {"lower": _number(shorthand, "lower", "returns"),
                        "upper": _number(shorthand, "upper", "returns")},
            "numerics": base_effective["numerics"],
        }
    base_effective["sweep"] = {"variable": variable, "start": start,
                               "stop": stop, "steps": steps}
    return SweepSetup(variable=variable, values=values, setups=setups,
                      effective=base_effective)
