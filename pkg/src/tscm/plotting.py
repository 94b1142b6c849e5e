"""Figures for sweep summaries (quality vs. parameter, runtime vs. edges)."""
from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

KIND_LABELS = {"num": "numerical", "bin": "binary", "cat": "categorical"}
MARKERS = {"num": "o", "bin": "s", "cat": "^"}


def _style():
    return plt.rc_context({
        "font.size": 10,
        "axes.spines.right": False,
        "axes.spines.top": False,
        "axes.grid": True,
        "grid.alpha": 0.3,
        "savefig.dpi": 150,
        "savefig.bbox": "tight",
    })


def _by_kind(summary: Sequence[dict]) -> dict[str, list[dict]]:
    out: dict[str, list[dict]] = {}
    for row in summary:
        out.setdefault(row["kind"], []).append(row)
    for rows in out.values():
        rows.sort(key=lambda r: float(r["value"]))
    return out


def plot_quality(summary: Sequence[dict], path: str | Path) -> Path:
    """SS and Q (mean with std bars) against the swept parameter, one line per kind."""
    path = Path(path)
    param = summary[0]["param"] if summary else "value"
    with _style():
        fig, axes = plt.subplots(1, 2, figsize=(8, 3.2), sharex=True)
        for kind, rows in _by_kind(summary).items():
            x = [float(r["value"]) for r in rows]
            for ax, key in zip(axes, ("ss", "q")):
                ax.errorbar(
                    x, [r[f"{key}_mean"] for r in rows], yerr=[r[f"{key}_std"] for r in rows],
                    marker=MARKERS.get(kind, "o"), capsize=3, label=KIND_LABELS.get(kind, kind),
                )
        for ax, label in zip(axes, ("SS", "Q")):
            ax.set_xlabel(param)
            ax.set_ylabel(label)
            ax.set_ylim(0, 1.05)
        axes[1].legend(frameon=False)
        fig.savefig(path)
        plt.close(fig)
    return path


def plot_runtime(summary: Sequence[dict], path: str | Path) -> Path:
    """Mean runtime against mean edge count on log-log axes."""
    path = Path(path)
    with _style():
        fig, ax = plt.subplots(figsize=(4, 3.2))
        for kind, rows in _by_kind(summary).items():
            ax.errorbar(
                [r["m_mean"] for r in rows], [r["runtime_s_mean"] for r in rows],
                yerr=[r["runtime_s_std"] for r in rows], marker=MARKERS.get(kind, "o"),
                capsize=3, label=KIND_LABELS.get(kind, kind),
            )
        ax.set_xscale("log")
        ax.set_yscale("log")
        ax.set_xlabel("edges m")
        ax.set_ylabel("runtime (s)")
        ax.legend(frameon=False)
        fig.savefig(path)
        plt.close(fig)
    return path
