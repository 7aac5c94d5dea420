"""Static SVG time plots of a trajectory."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .simulator import Trajectory  # noqa: E402

PANELS = (
    ("positions", ("z1", "z2", "z3"), lambda tr: tr.states[:, 0:3]),
    ("velocities", ("z4", "z5", "z6"), lambda tr: tr.states[:, 3:6]),
    ("inputs", ("u1", "u2"), lambda tr: tr.inputs),
)


def build_figure(trajectory: Trajectory):
    """Stacked position / velocity / input panels with phase switches as dashed rules."""
    if len(trajectory) == 0:
        raise ValueError("cannot plot an empty trajectory")
    fig, axes = plt.subplots(len(PANELS), 1, sharex=True, figsize=(7, 8))
    marker = "o" if len(trajectory) == 1 else None
    switch_times = [trajectory.t[k] for k in trajectory.phase_boundaries[1:-1]]
    for ax, (title, labels, get) in zip(axes, PANELS):
        data = get(trajectory)
        if data is not None:
            for col, label in enumerate(labels):
                ax.plot(trajectory.t, data[:, col], label=label, marker=marker)
            ax.legend(loc="upper right", fontsize="small")
        for ts in switch_times:
            ax.axvline(ts, color="0.6", linestyle="--", linewidth=0.8, gid="phase-switch")
        ax.set_ylabel(title)
        ax.grid(True, alpha=0.3)
    axes[-1].set_xlabel("t [s]")
    fig.tight_layout()
    return fig


def emit_plot(trajectory: Trajectory, out_path) -> None:
    # fixed hash salt keeps SVG element ids stable across runs
    with plt.rc_context({"svg.hashsalt": "chainedswitch"}):
        fig = build_figure(trajectory)
        try:
            fig.savefig(out_path, format="svg", metadata={"Date": None})
        finally:
            plt.close(fig)
