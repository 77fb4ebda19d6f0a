"""Config parsing, serialization round trips, and sweep expansion."""

from __future__ import annotations

import pytest

from possave.config import (NUMERIC_DEFAULTS, distribution_to_json,
                            fuzzy_to_json, load_config, parse_distribution,
                            parse_fuzzy, parse_numerics, parse_utility,
                            parse_weighting, resolve_compare, resolve_solve,
                            resolve_sweep, utility_to_json,
                            weighting_to_json)
from possave.errors import ConfigError, InvalidParameterError
from possave.fuzzy import (CrispInterval, CrispPoint, SampledNumber,
                           TrapezoidalNumber, TriangularNumber)
from possave.models import (CertainProblem, PossibilisticProblem,
                            ProbabilisticProblem)
from possave.stochastic import DiscreteReturn, UniformReturn
from possave.utility import (CARAUtility, CRRAUtility, LogUtility,
                             QuadraticUtility)


def compare_config(**overrides) -> dict:
    config = {
        "y0": 1.0,
        "utility": {"kind": "crra", "gamma": 3.0},
        "weighting": {"kind": "power", "exponent": 1.0},
        "returns": {"lower": 1.0, "upper": 1.2},
    }
    config.update(overrides)
    return config


class TestLoadConfig:

    def test_reads_a_json_object(self, tmp_path):
        path = tmp_path / "c.json"
        path.write_text('{"y0": 1.0}', encoding="utf-8")
        assert load_config(str(path)) == {"y0": 1.0}

    def test_missing_file(self):
        with pytest.raises(ConfigError):
            load_config("/nonexistent/config.json")

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "c.json"
        path.write_text("{not json", encoding="utf-8")
        with pytest.raises(ConfigError):
            load_config(str(path))

    def test_top_level_must_be_an_object(self, tmp_path):
        path = tmp_path / "c.json"
        path.write_text("[1, 2]", encoding="utf-8")
        with pytest.raises(ConfigError):
            load_config(str(path))


class TestComponentParsers:

    @pytest.mark.parametrize("obj,expected_type", [
        ({"kind": "crra", "gamma": 2.0}, CRRAUtility),
        ({"kind": "crra", "gamma": 1.0}, LogUtility),  # the smooth limit
        ({"kind": "log"}, LogUtility),
        ({"kind": "cara", "coefficient": 0.5}, CARAUtility),
        ({"kind": "quadratic", "curvature": 0.1}, QuadraticUtility),
    ])
    def test_parse_utility(self, obj, expected_type):
        assert isinstance(parse_utility(obj), expected_type)

    @pytest.mark.parametrize("obj", [
        {"kind": "exotic"},
        {"kind": "crra"},                          # gamma missing
        {"kind": "crra", "gamma": 2.0, "x": 1},    # unknown key
        {"kind": "log", "gamma": 2.0},
        {"kind": "crra", "gamma": "2"},            # not a number
        {"kind": "crra", "gamma": True},           # bool is not a number
        "crra",
    ])
    def test_parse_utility_rejects(self, obj):
        with pytest.raises(ConfigError):
            parse_utility(obj)

    def test_utility_round_trip(self):
        for obj in ({"kind": "crra", "gamma": 2.5}, {"kind": "log"},
                    {"kind": "cara", "coefficient": 0.3},
                    {"kind": "quadratic", "curvature": 0.2}):
            assert utility_to_json(parse_utility(obj)) == obj

    def test_parse_weighting_defaults_to_the_2t_tilt(self):
        weighting = parse_weighting(None)
        assert weighting.kind == "power"
        assert weighting.exponent == 1.0

    def test_weighting_round_trip(self):
        for obj in ({"kind": "uniform"}, {"kind": "power", "exponent": 2.0}):
            assert weighting_to_json(parse_weighting(obj)) == obj

    @pytest.mark.parametrize("obj,expected_type", [
        ({"shape": "crisp_point", "value": 1.1}, CrispPoint),
        ({"shape": "crisp_interval", "lower": 1.0, "upper": 1.2},
         CrispInterval),
        ({"shape": "triangular", "peak": 1.1, "left_spread": 0.1,
          "right_spread": 0.1}, TriangularNumber),
        ({"shape": "trapezoidal", "core_lower": 1.0, "core_upper": 1.2,
          "left_spread": 0.1, "right_spread": 0.05}, TrapezoidalNumber),
        ({"shape": "sampled", "levels": [0.0, 1.0], "lower": [1.0, 1.05],
          "upper": [1.3, 1.2]}, SampledNumber),
    ])
    def test_parse_fuzzy_shapes_round_trip(self, obj, expected_type):
        number = parse_fuzzy(obj, "fuzzy_return")
        assert isinstance(number, expected_type)
        assert fuzzy_to_json(number) == obj

    def test_parse_fuzzy_rejects_unknown_shape(self):
        with pytest.raises(ConfigError):
            parse_fuzzy({"shape": "bell"}, "fuzzy_return")

    def test_parse_fuzzy_rejects_non_list_grid(self):
        with pytest.raises(ConfigError):
            parse_fuzzy({"shape": "sampled", "levels": "0,1",
                         "lower": [1.0, 1.0], "upper": [1.2, 1.2]},
                        "fuzzy_return")

    def test_distribution_round_trip(self):
        uniform = {"kind": "uniform", "lower": 1.0, "upper": 1.2}
        discrete = {"kind": "discrete", "atoms": [[1.0, 0.5], [1.2, 0.5]]}
        assert distribution_to_json(
            parse_distribution(uniform, "random_return")) == uniform
        assert distribution_to_json(
            parse_distribution(discrete, "random_return")) == discrete
        assert isinstance(parse_distribution(uniform, "r"), UniformReturn)
        assert isinstance(parse_distribution(discrete, "r"), DiscreteReturn)

    def test_distribution_rejects_malformed_atoms(self):
        with pytest.raises(ConfigError):
            parse_distribution({"kind": "discrete", "atoms": [[1.0]]}, "r")
        with pytest.raises(ConfigError):
            parse_distribution({"kind": "discrete", "atoms": "1.0:1"}, "r")


class TestNumerics:

    def test_defaults(self):
        assert parse_numerics(None) == NUMERIC_DEFAULTS

    def test_file_values_override_defaults(self):
        merged = parse_numerics({"nodes": 32, "tol_f": 1e-8})
        assert merged["nodes"] == 32
        assert merged["tol_f"] == 1e-8
        assert merged["tol_s"] == NUMERIC_DEFAULTS["tol_s"]

    def test_cli_overrides_beat_the_file(self):
        merged = parse_numerics({"nodes": 32, "seed": 5}, nodes=128, seed=9)
        assert merged["nodes"] == 128
        assert merged["seed"] == 9

    @pytest.mark.parametrize("obj", [
        {"nodes": 1}, {"nodes": 2.5}, {"nodes": True}, {"max_iter": 0},
        {"seed": -1}, {"tol_s": 0.0}, {"tol_f": -1e-9}, {"tie_band": -1e-9},
        {"extra": 1},
    ])
    def test_rejects_bad_settings(self, obj):
        with pytest.raises(ConfigError):
            parse_numerics(obj)


class TestResolveSolve:

    def test_certain_risk(self):
        setup = resolve_solve({
            "y0": 1.0,
            "utility": {"kind": "crra", "gamma": 2.0},
            "risk": {"kind": "certain", "rate": 1.1},
        })
        assert isinstance(setup.problem, CertainProblem)
        assert setup.problem.rate == 1.1
        assert setup.effective["risk"] == {"kind": "certain", "rate": 1.1}

    def test_probabilistic_risk(self):
        setup = resolve_solve({
            "y0": 1.0,
            "utility": {"kind": "crra", "gamma": 2.0},
            "risk": {"kind": "probabilistic",
                     "distribution": {"kind": "uniform", "lower": 1.0,
                                      "upper": 1.2}},
        })
        assert isinstance(setup.problem, ProbabilisticProblem)

    def test_possibilistic_risk(self):
        setup = resolve_solve({
            "y0": 1.0,
            "utility": {"kind": "crra", "gamma": 2.0},
            "risk": {"kind": "possibilistic",
                     "fuzzy": {"shape": "triangular", "peak": 1.1,
                               "left_spread": 0.1, "right_spread": 0.1}},
        })
        assert isinstance(setup.problem, PossibilisticProblem)

    def test_effective_config_is_a_fixed_point(self):
        setup = resolve_solve({
            "y0": 1.0,
            "utility": {"kind": "crra", "gamma": 2.0},
            "risk": {"kind": "certain", "rate": 1.1},
        })
        again = resolve_solve(setup.effective)
        assert again.effective == setup.effective

    @pytest.mark.parametrize("config", [
        {"utility": {"kind": "log"},
         "risk": {"kind": "certain", "rate": 1.1}},        # y0 missing
        {"y0": 1.0, "utility": {"kind": "log"}},             # risk missing
        {"y0": 1.0, "utility": {"kind": "log"},
         "risk": {"kind": "exotic"}},
        {"y0": 1.0, "utility": {"kind": "log"}, "surprise": 1,
         "risk": {"kind": "certain", "rate": 1.1}},
        {"y0": 1.0, "utility": {"kind": "log"},
         "risk": {"kind": "certain", "rate": 1.1, "extra": 2}},
    ])
    def test_rejects_malformed_configs(self, config):
        with pytest.raises(ConfigError):
            resolve_solve(config)


class TestResolveCompare:

    def test_shorthand_expands_to_the_matched_pair(self):
        setup = resolve_compare(compare_config())
        assert setup.mean_return == pytest.approx(1.1, abs=1e-15)
        assert isinstance(setup.distribution, UniformReturn)
        assert isinstance(setup.fuzzy_return, CrispInterval)
        assert setup.fuzzy_return.lower == 1.0
        assert setup.fuzzy_return.upper == 1.2
        assert setup.effective["mean_return"] == setup.mean_return
        assert setup.effective["numerics"]["nodes"] == 64

    def test_explicit_triple(self):
        setup = resolve_compare({
            "y0": 1.0,
            "utility": {"kind": "crra", "gamma": 2.0},
            "mean_return": 1.1,
            "random_return": {"kind": "uniform", "lower": 1.0,
                              "upper": 1.2},
            "fuzzy_return": {"shape": "triangular", "peak": 1.1,
                             "left_spread": 0.1, "right_spread": 0.1},
        })
        assert isinstance(setup.fuzzy_return, TriangularNumber)

    def test_effective_config_is_a_fixed_point(self):
        setup = resolve_compare(compare_config())
        again = resolve_compare(setup.effective)
        assert again.effective == setup.effective

    def test_shorthand_and_explicit_conflict(self):
        with pytest.raises(ConfigError):
            resolve_compare(compare_config(mean_return=1.1))

    def test_missing_returns(self):
        config = compare_config()
        del config["returns"]
        with pytest.raises(ConfigError):
            resolve_compare(config)

    def test_cli_nodes_override(self):
        setup = resolve_compare(compare_config(), nodes=32)
        assert setup.rule.node_count == 32
        assert setup.effective["numerics"]["nodes"] == 32


class TestResolveSweep:

    def sweep_config(self, **sweep) -> dict:
        block = {"variable": "gamma", "start": 0.5, "stop": 3.0, "steps": 6}
        block.update(sweep)
        return compare_config(sweep=block)

    def test_grid_hits_both_endpoints_exactly(self):
        setup = resolve_sweep(self.sweep_config())
        assert setup.variable == "gamma"
        assert len(setup.values) == 6
        assert setup.values[0] == 0.5
        assert setup.values[-1] == 3.0
        assert len(setup.setups) == 6

    def test_gamma_grid_point_at_one_becomes_log(self):
        setup = resolve_sweep(self.sweep_config(start=0.5, stop=1.5,
                                                steps=3))
        assert setup.values[1] == 1.0
        assert isinstance(setup.setups[1].utility, LogUtility)

    def test_spread_sweep_reshapes_the_interval(self):
        setup = resolve_sweep(self.sweep_config(variable="spread", start=0.1,
                                                stop=0.2, steps=2))
        first = setup.setups[0]
        assert first.fuzzy_return.lower == pytest.approx(1.05, abs=1e-12)
        assert first.fuzzy_return.upper == pytest.approx(1.15, abs=1e-12)
        assert first.mean_return == pytest.approx(1.1, abs=1e-12)

    def test_rate_sweep_translates_the_interval(self):
        setup = resolve_sweep(self.sweep_config(variable="R", start=1.05,
                                                stop=1.25, steps=2))
        last = setup.setups[-1]
        assert last.mean_return == pytest.approx(1.25, abs=1e-12)
        assert last.fuzzy_return.upper - last.fuzzy_return.lower \
            == pytest.approx(0.2, abs=1e-12)

    def test_income_sweep(self):
        setup = resolve_sweep(self.sweep_config(variable="y0", start=1.0,
                                                stop=2.0, steps=3))
        assert [s.income for s in setup.setups] == [1.0, 1.5, 2.0]

    def test_effective_config_keeps_the_shorthand(self):
        setup = resolve_sweep(self.sweep_config())
        assert setup.effective["returns"] == {"lower": 1.0, "upper": 1.2}
        assert setup.effective["sweep"]["steps"] == 6
        again = resolve_sweep(setup.effective)
        assert again.effective == setup.effective
        assert again.values == setup.values

    def test_rejects_short_grids_and_unknown_variables(self):
        with pytest.raises(ConfigError):
            resolve_sweep(self.sweep_config(steps=1))
        with pytest.raises(ConfigError):
            resolve_sweep(self.sweep_config(variable="beta"))

    def test_gamma_sweep_needs_a_crra_or_log_base(self):
        config = self.sweep_config()
        config["utility"] = {"kind": "cara", "coefficient": 0.5}
        with pytest.raises(ConfigError):
            resolve_sweep(config)

    def test_spread_sweep_needs_the_shorthand(self):
        config = {
            "y0": 1.0,
            "utility": {"kind": "crra", "gamma": 2.0},
            "mean_return": 1.1,
            "random_return": {"kind": "uniform", "lower": 1.0,
                              "upper": 1.2},
            "fuzzy_return": {"shape": "crisp_interval", "lower": 1.0,
                             "upper": 1.2},
            "sweep": {"variable": "spread", "start": 0.1, "stop": 0.2,
                      "steps": 2},
        }
        with pytest.raises(ConfigError):
            resolve_sweep(config)

    def test_bad_grid_point_fails_before_any_solving(self):
        # gamma = 0 is invalid, and it is caught during resolution
        with pytest.raises(InvalidParameterError):
            resolve_sweep(self.sweep_config(start=0.0, stop=2.0, steps=3))
