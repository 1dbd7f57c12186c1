"""Series and model files, prediction overlays, plots and bundled data."""

from llds.io.datasets import HARE_LYNX_PATH, load_hare_lynx
from llds.io.model_file import ModelFile, read_model_file, write_model_file
from llds.io.plot import axis_range, emit_plot, render_plot, write_plot
from llds.io.prediction import free_run_predict, log_rmse, one_step_predict
from llds.io.problem_file import ControlProblemFile
from llds.io.series import (
    SeriesFile,
    atomic_write,
    format_float,
    load_series_file,
    read_series,
    write_series,
)

__all__ = [
    # Series files
    "SeriesFile",
    "load_series_file",
    "read_series",
    "write_series",
    "atomic_write",
    "format_float",
    # Model files
    "ModelFile",
    "read_model_file",
    "write_model_file",
    # Control problems
    "ControlProblemFile",
    # Prediction
    "one_step_predict",
    "free_run_predict",
    "log_rmse",
    # Plot
    "emit_plot",
    "render_plot",
    "write_plot",
    "axis_range",
    # Data
    "HARE_LYNX_PATH",
    "load_hare_lynx",
]
