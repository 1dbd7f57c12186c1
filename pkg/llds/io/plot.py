"""
SVG overlay of measured and predicted series, one pane per component.

The document is rendered from a Jinja2 template; measured series are solid
polylines, predictions dashed, both axes linear and auto-scaled with margins.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from llds.config_manager import PlotConfig, TemplateLoader
from llds.core import Trajectory
from llds.errors import DimensionMismatchError, SeriesIOError
from llds.io.series import atomic_write, default_columns

logger = logging.getLogger("llds")

TICK_COUNT = 5


@dataclass(frozen=True)
class PlotArea:
    left: float
    top: float
    width: float
    height: float

    @property
    def right(self) -> float:
        return self.left + self.width

    @property
    def bottom(self) -> float:
        return self.top + self.height


def axis_range(values: np.ndarray, margin: float) -> tuple[float, float]:
    """
    Data range widened by ``margin`` of its span on both sides.

    A constant series spans ``value ± margin·|value|`` (± 1 when the value is 0).
    """
    lo, hi = float(np.min(values)), float(np.max(values))
    span = hi - lo
    if span > 0:
        return lo - margin * span, hi + margin * span
    half = margin * abs(lo) if lo != 0 else 1.0
    return lo - half, hi + half


def _scale(values: np.ndarray, lo: float, hi: float, start: float, length: float) -> np.ndarray:
    return start + (values - lo) / (hi - lo) * length


def _points(xs: np.ndarray, ys: np.ndarray) -> str:
    return " ".join(f"{x:.2f},{y:.2f}" for x, y in zip(xs, ys))


def _ticks(lo: float, hi: float, start: float, length: float, flip: bool) -> list[dict]:
    ticks = []
    for value in np.linspace(lo, hi, TICK_COUNT):
        position = _scale(np.array(value), lo, hi, 0.0, length)
        position = start + (length - position if flip else position)
        ticks.append({"position": f"{float(position):.2f}", "label": f"{value:.4g}"})
    return ticks


def render_plot(
    real: Trajectory,
    predicted: Trajectory,
    labels: Optional[Sequence[str]] = None,
    start: int = 1,
    title: str = "Measured and predicted series",
    x_label: str = "t",
    config: Optional[PlotConfig] = None,
) -> str:
    """
    Render a standalone SVG 1.1 overlay plot.

    Args:
        real: measured trajectory (solid lines)
        predicted: predicted trajectory of the same shape (dashed lines)
        labels: one y-axis label per component; defaults to ``x1..xn``
        start: step label of the first state, used on the x axis

    Returns:
        The SVG document

    Raises:
        DimensionMismatchError: If the two trajectories differ in shape
    """
    config = config or PlotConfig()
    if real.states.shape != predicted.states.shape:
        raise DimensionMismatchError(
            f"measured shape {real.states.shape} differs from predicted {predicted.states.shape}"
        )
    labels = tuple(labels) if labels is not None else default_columns("x", real.n)
    if len(labels) != real.n:
        raise DimensionMismatchError(f"{len(labels)} labels for {real.n} components")

    plot = PlotArea(
        left=64.0,
        top=20.0,
        width=float(config.pane_width - 84),
        height=float(config.pane_height - 64),
    )
    steps = np.arange(start, start + real.T, dtype=np.float64)
    x_lo, x_hi = axis_range(steps, config.margin_fraction)
    xs = _scale(steps, x_lo, x_hi, plot.left, plot.width)

    panes = []
    for i, label in enumerate(labels):
        both = np.concatenate([real.states[:, i], predicted.states[:, i]])
        y_lo, y_hi = axis_range(both, config.margin_fraction)

        def to_y(values, lo=y_lo, hi=y_hi):
            return plot.bottom - _scale(values, lo, hi, 0.0, plot.height)

        panes.append(
            {
                "offset": i * config.pane_height,
                "label": label,
                "measured": _points(xs, to_y(real.states[:, i])),
                "predicted": _points(xs, to_y(predicted.states[:, i])),
                "x_ticks": _ticks(x_lo, x_hi, plot.left, plot.width, flip=False),
                "y_ticks": _ticks(y_lo, y_hi, plot.top, plot.height, flip=True),
            }
        )

    return TemplateLoader.render_file(
        config.get_template_path(),
        {
            "width": config.pane_width,
            "height": config.pane_height * real.n,
            "title": title,
            "x_label": x_label,
            "plot": plot,
            "panes": panes,
        },
    )


def write_plot(path: Union[str, Path], document: str) -> None:
    """Write a rendered SVG document atomically."""
    try:
        with atomic_write(path) as handle:
            handle.write(document)
    except OSError as e:
        raise SeriesIOError(f"cannot write {path}: {e}") from e
    logger.info(f"📈 Plot written to {path}")


def emit_plot(
    path: Union[str, Path],
    real: Trajectory,
    predicted: Trajectory,
    labels: Optional[Sequence[str]] = None,
    start: int = 1,
    title: str = "Measured and predicted series",
    x_label: str = "t",
    config: Optional[PlotConfig] = None,
) -> None:
    """
    Render and write an overlay plot; nothing is written when rendering fails.

    Raises:
        DimensionMismatchError: If the two trajectories differ in shape
        SeriesIOError: If the file cannot be written
    """
    document = render_plot(real, predicted, labels, start, title, x_label, config)
    write_plot(path, document)
