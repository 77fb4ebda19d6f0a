"""Shared helpers: finite differences, config files, CLI invocation."""

from __future__ import annotations

import json

import pytest

from possave.cli import main as cli_main


def central_diff(fn, x: float, step: float = 1e-6) -> float:
    """Two-sided difference quotient; the independent derivative oracle."""
    return (fn(x + step) - fn(x - step)) / (2.0 * step)


@pytest.fixture
def write_config(tmp_path):
    """Dump a config dict to a JSON file and return its path."""
    counter = {"n": 0}

    def write(payload: dict) -> str:
        counter["n"] += 1
        path = tmp_path / f"config_{counter['n']}.json"
        path.write_text(json.dumps(payload), encoding="utf-8")
        return str(path)

    return write


@pytest.fixture
def run_cli(capsys):
    """Invoke the CLI in-process; returns (exit_code, stdout, stderr)."""

    def invoke(*argv: str):
        code = cli_main(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return invoke
