"""Figure rendering for the CLI report path.

Each renderer writes one PNG next to the delimited output. Rendering is
opt-in from the CLI; nothing here touches the JSON/CSV byte streams.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .analysis import ComparisonReport  # noqa: E402
from .models import SavingProblem  # noqa: E402

GRID_POINTS = 241

MODEL_COLORS = {
    "certain": "#444444",
    "probabilistic": "#1f77b4",
    "possibilistic": "#d62728",
}


def _utility_curve(problem: SavingProblem, points: int = GRID_POINTS):
    lo, hi = problem.feasible_interval()
    # trim the extremes: CRRA-style utilities plunge near the boundary
    # and would flatten everything else in the plot
    pad = 0.02 * (hi - lo)
    lo, hi = lo + pad, hi - pad
    xs = [lo + (hi - lo) * i / (points - 1) for i in range(points)]
    ys = [problem.total_utility(x) for x in xs]
    return xs, ys


def _finish(fig, path: str) -> str:
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fig.savefig(path, dpi=144)
    plt.close(fig)
    return path


def render_solve_figure(problem: SavingProblem, s_opt: float,
                        path: str) -> str:
    """Objective curve with the solved optimum marked."""
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    xs, ys = _utility_curve(problem)
    ax.plot(xs, ys, color=MODEL_COLORS["certain"], lw=1.6)
    ax.axvline(s_opt, color=MODEL_COLORS["possibilistic"], lw=1.0, ls="--")
    ax.annotate(f"s = {s_opt:.6f}", xy=(s_opt, min(ys)),
                xytext=(4, 6), textcoords="offset points", fontsize=9)
    ax.set_xlabel("saving s")
    ax.set_ylabel("total utility")
    ax.set_title(type(problem).__name__.replace("Problem", " model"))
    fig.tight_layout()
    return _finish(fig, path)


def render_compare_figure(certain: SavingProblem,
                          probabilistic: SavingProblem,
                          possibilistic: SavingProblem,
                          report: ComparisonReport, path: str) -> str:
    """The three objectives with optima, plus the saving differences."""
    fig, (top, bottom) = plt.subplots(
        2, 1, figsize=(6.8, 6.4), height_ratios=[2.2, 1.0])
    curves = (("certain", certain, report.s_certain),
              ("probabilistic", probabilistic, report.s_probabilistic),
              ("possibilistic", possibilistic, report.s_possibilistic))
    for name, problem, s_opt in curves:
        xs, ys = _utility_curve(problem)
        color = MODEL_COLORS[name]
        top.plot(xs, ys, color=color, lw=1.5, label=name)
        top.axvline(s_opt, color=color, lw=0.9, ls="--")
    top.set_xlabel("saving s")
    top.set_ylabel("total utility")
    top.legend(fontsize=9)

    labels = ("prob - certain", "poss - certain", "poss - prob")
    deltas = (report.precautionary_prob, report.precautionary_poss,
              report.precautionary_cross)
    bars = bottom.bar(labels, deltas,
                      color=[MODEL_COLORS["probabilistic"],
                             MODEL_COLORS["possibilistic"], "#777777"])
    bottom.axhline(0.0, color="black", lw=0.8)
    bottom.bar_label(bars, fmt="%.2e", fontsize=8)
    bottom.set_ylabel("saving difference")
    fig.tight_layout()
    return _finish(fig, path)


def render_sweep_figure(variable: str, values: list[float],
                        rows: list[dict], path: str) -> str:
    """Precautionary differences along the sweep grid."""
    fig, ax = plt.subplots(figsize=(6.8, 4.4))
    series = (("prec_prob", "probabilistic"),
              ("prec_poss", "possibilistic"),
              ("prec_cross", "cross"))
    colors = (MODEL_COLORS["probabilistic"], MODEL_COLORS["possibilistic"],
              "#777777")
    for (column, label), color in zip(series, colors):
        ax.plot(values, [row[column] for row in rows], marker="o",
                ms=3.5, lw=1.4, color=color, label=label)
    ax.axhline(0.0, color="black", lw=0.8)
    ax.set_xlabel(variable)
    ax.set_ylabel("saving difference vs certain / probabilistic")
    ax.legend(fontsize=9)
    fig.tight_layout()
    return _finish(fig, path)
