"""Figure rendering for the report path.

Each subcommand can write a small matplotlib figure next to its JSON
output.  Values are exact rationals everywhere else; floats appear here
only to place marks on a canvas.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)


def _finish(fig, path: str) -> None:
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)


def render_pluri(table, path: str) -> None:
    ms = sorted(table)
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.bar(ms, [float(table[m]) for m in ms], color="#4878a8")
    ax.set_xlabel("m")
    ax.set_ylabel("P_m")
    ax.set_title("plurigenera")
    _finish(fig, path)


def render_classification(report, path: str) -> None:
    labels = [" + ".join(f"{r},{b}" for r, b in s.baskets.pairs) or "(none)"
              for s in report.solutions]
    values = [float(s.k3) for s in report.solutions]
    fig, ax = plt.subplots(figsize=(6, 0.6 * max(len(values), 2) + 1.4))
    ax.barh(range(len(values)), values, color="#4878a8")
    ax.set_yticks(range(len(values)), labels)
    if values:
        ax.axvline(min(values), color="#a84848", linestyle="--", linewidth=1)
    ax.set_xlabel("K^3")
    ax.set_title(f"{len(values)} solutions, {len(report.excluded)} excluded")
    _finish(fig, path)


def render_trace(trace, path: str) -> None:
    bounds = [float(trace.start)] + [float(s.new_bound) for s in trace.steps]
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.step(range(len(bounds)), bounds, where="post", marker="o", color="#4878a8")
    for idx, step in enumerate(trace.steps, start=1):
        ax.annotate(f"m={step.m}", (idx, bounds[idx]), textcoords="offset points",
                    xytext=(4, -10), fontsize=8)
    if trace.sup_certified is not None:
        ax.axhline(float(trace.sup_certified), color="#a84848", linestyle="--",
                   linewidth=1, label="certified sup")
        ax.legend(loc="lower right", fontsize=8)
    ax.set_xlabel("adopted step")
    ax.set_ylabel("xi lower bound")
    _finish(fig, path)


def render_slopes(state, path: str) -> None:
    ms = sorted(state.bounds)
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.bar(ms, [float(state.bounds[m]) for m in ms], color="#4878a8")
    ax.axhline(1.0, color="#a84848", linestyle="--", linewidth=1)
    ax.set_xlabel("level m")
    ax.set_ylabel("slope lower bound")
    _finish(fig, path)


def render_hilbert(values, path: str) -> None:
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.bar(range(len(values)), list(values), color="#4878a8")
    ax.set_xlabel("degree")
    ax.set_ylabel("coefficient")
    ax.set_title("Hilbert series")
    _finish(fig, path)


def render_main(report, path: str) -> None:
    labels = [b.branch_id for b in report.branches]
    values = [float(b.bound) for b in report.branches]
    fig, ax = plt.subplots(figsize=(6, 3.2))
    ax.barh(range(len(values)), values, color="#4878a8")
    ax.set_yticks(range(len(values)), labels)
    ax.axvline(float(report.global_bound), color="#a84848", linestyle="--",
               linewidth=1, label="global minimum")
    ax.set_xlabel("volume lower bound")
    ax.legend(loc="lower right", fontsize=8)
    _finish(fig, path)
