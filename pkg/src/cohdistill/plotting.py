"""Figure rendering for sweep output.

Produces a two-panel PNG next to the CSV: distillation rates on top,
correlation measures below, both against the sweep parameter p.
"""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def render_sweep_figure(rows, path, family: str) -> None:
    """Render sweep rows (cli.SweepRow) to a PNG at the given path."""
    p = [row.p for row in rows]
    fig, (top, bottom) = plt.subplots(2, 1, figsize=(7.0, 8.0), sharex=True)

    top.plot(p, [row.c_abc for row in rows], "o-", label="joint rate")
    top.plot(p, [row.c_ab for row in rows], "s--", label="first-target rate")
    top.plot(p, [row.c_ac for row in rows], "d--", label="second-target rate")
    top.set_ylabel("assisted distillable coherence (bits)")
    top.set_title(f"{family} family sweep")
    top.grid(True, alpha=0.3)
    top.legend()

    bottom.plot(p, [row.tau for row in rows], "o-", label="tau")
    bottom.plot(p, [row.delta_sef for row in rows], "s--", label="delta_sef")
    bottom.plot(p, [row.d3 for row in rows], "d--", label="d3")
    bottom.plot(p, [row.three_tangle for row in rows], "^:", label="three_tangle")
    bottom.set_xlabel("p")
    bottom.set_ylabel("correlation measures")
    bottom.grid(True, alpha=0.3)
    bottom.legend()

    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
