"""Figure rendering for meshes, sample clouds and trajectories.

Headless (Agg) matplotlib output; every function writes one figure file
next to the delimited data the CLI produces.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def apply_style() -> None:
    plt.rc("figure", figsize=(6.0, 4.8), dpi=150)
    plt.rc("font", size=9)
    plt.rc("axes", linewidth=0.6, labelsize=9)
    plt.rc("legend", fontsize=8, frameon=False)


def save_points_figure(records, path, title) -> None:
    """3D scatter of (a, b, c) records colored by the solved angle."""
    apply_style()
    fig = plt.figure()
    ax = fig.add_subplot(projection="3d")
    a = [r.a for r in records]
    b = [r.b for r in records]
    c = [r.c for r in records]
    theta = [r.theta for r in records]
    plot = ax.scatter(a, b, c, c=theta, s=6, cmap="viridis")
    fig.colorbar(plot, ax=ax, shrink=0.7, label="theta (rad)")
    ax.set_xlabel("a")
    ax.set_ylabel("b")
    ax.set_zlabel("c")
    ax.set_title(title)
    fig.savefig(path, bbox_inches="tight")
    plt.close(fig)


def save_trajectory_figure(trajectory, path, title) -> None:
    """Planar paths of the four bodies with start markers."""
    apply_style()
    fig, ax = plt.subplots()
    for i in range(4):
        x = trajectory.positions[:, i, 0]
        y = trajectory.positions[:, i, 1]
        (line,) = ax.plot(x, y, lw=0.8, label=f"body {i + 1}")
        ax.plot(x[0], y[0], "o", ms=4, color=line.get_color())
    ax.set_aspect("equal")
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_title(title)
    ax.legend(loc="upper right")
    fig.savefig(path, bbox_inches="tight")
    plt.close(fig)
