"""
SVG and CSV output for numerical range estimates
"""

import logging
from pathlib import Path
from typing import Sequence, Tuple, Union

import numpy as np

from .schemas import NumericalRangeEstimate

# matplotlib support
try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    MATPLOTLIB_AVAILABLE = True
except ImportError:
    MATPLOTLIB_AVAILABLE = False

log = logging.getLogger(__name__)

PathLike = Union[str, Path]
COLORS = ("tab:blue", "tab:orange", "tab:green", "tab:red")


def emit_plot(
    body: NumericalRangeEstimate,
    path: PathLike,
    overlays: Sequence[Tuple[str, NumericalRangeEstimate]] = (),
    label: str = "W(x)",
) -> Path:
    """
    Write an SVG of the outer body, the inner point cloud and any overlaid bodies

    The unit circle and both axes are drawn for reference.

    Raises:
        ImportError: matplotlib is not installed
    """
    if not MATPLOTLIB_AVAILABLE:
        raise ImportError("plotting needs matplotlib. Install with: pip install banachlab[plot]")
    path = Path(path)
    fig, ax = plt.subplots(figsize=(6, 6))
    try:
        circle = np.exp(1j * np.linspace(0.0, 2.0 * np.pi, 361))
        ax.plot(circle.real, circle.imag, color="0.8", linewidth=0.8, label="unit circle")
        ax.axhline(0.0, color="0.6", linewidth=0.6)
        ax.axvline(0.0, color="0.6", linewidth=0.6)
        for index, (name, estimate) in enumerate([(label, body), *overlays]):
            vertices = estimate.vertices()
            color = COLORS[index % len(COLORS)]
            if vertices.shape[0]:
                closed = np.vstack([vertices, vertices[:1]])
                ax.plot(closed[:, 0], closed[:, 1], color=color, linewidth=1.2, label=f"{name} outer")
            if estimate.inner.size:
                ax.scatter(estimate.inner.real, estimate.inner.imag, s=2, color=color, alpha=0.5, label=f"{name} states")
        ax.set_aspect("equal")
        ax.set_xlabel("Re")
        ax.set_ylabel("Im")
        ax.legend(loc="upper right", fontsize="small")
        fig.savefig(path, format="svg")
    finally:
        plt.close(fig)
    log.info("wrote %s", path)
    return path


def write_support_csv(body: NumericalRangeEstimate, path: PathLike) -> Path:
    """Columns theta, h(theta) of the outer body"""
    path = Path(path)
    np.savetxt(path, np.column_stack([body.directions, body.outer]), delimiter=",", header="theta,support", comments="")
    return path


def write_inner_csv(body: NumericalRangeEstimate, path: PathLike) -> Path:
    """Columns re, im of the sampled state values"""
    path = Path(path)
    points = np.column_stack([body.inner.real, body.inner.imag]) if body.inner.size else np.zeros((0, 2))
    np.savetxt(path, points, delimiter=",", header="re,im", comments="")
    return path
