"""
Static SVG Gantt charts of single machine schedules.
"""

import logging
from pathlib import Path
from typing import Optional, Union

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from ..core.instance import Instance  # noqa: E402
from ..core.scheduling import Schedule  # noqa: E402

logger = logging.getLogger(__name__)

ROW_HEIGHT = 0.8


def render_gantt(sched: Schedule, inst: Instance, path: Union[str, Path], title: Optional[str] = None) -> Path:
    """
    Draw one row per job with its processing intervals, a tick at its release
    date and a diamond for zero-length jobs. The SVG carries no date and a
    fixed hash salt, so equal schedules give byte-identical files.
    """
    path = Path(path)
    ids = sorted(sched.segments)
    cmap = plt.get_cmap("tab20" if len(ids) <= 20 else "hsv", max(len(ids), 1))

    with plt.rc_context({"svg.hashsalt": "alphasched", "svg.fonttype": "none"}):
        fig, ax = plt.subplots(figsize=(10, 1.0 + 0.4 * len(ids)))
        for row, j in enumerate(ids):
            bars = [(a, b - a) for a, b in sched.segments[j] if b > a]
            y = row - ROW_HEIGHT / 2
            if bars:
                ax.broken_barh(bars, (y, ROW_HEIGHT), facecolors=cmap(row), edgecolor="black", linewidth=0.5)
            else:
                ax.plot([sched.completion_time(j)], [row], marker="D", color=cmap(row), markeredgecolor="black")
            ax.vlines(inst.r(j), y, y + ROW_HEIGHT, colors="grey", linestyles="dotted")

        ax.set_yticks(range(len(ids)))
        ax.set_yticklabels([f"job {j}" for j in ids])
        ax.invert_yaxis()
        ax.set_xlabel("time")
        ax.set_title(title or f"{inst.name or 'schedule'} (speed {sched.speed:g})")
        ax.grid(True, axis="x", linestyle=":", linewidth=0.5)
        fig.tight_layout()
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)

    logger.info("Gantt chart written to %s", path)
    return path
