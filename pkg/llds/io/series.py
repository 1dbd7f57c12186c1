"""
CSV series files and atomic file output.

A series file has a header row whose first column is ``t`` (integer step,
increasing by exactly 1) followed by one column per state or input component.
Values are written with 17 significant digits, so reading a written file
reproduces the doubles exactly.
"""

import csv
import io
import logging
import os
import tempfile
from contextlib import contextmanager
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Optional, Sequence, Union

import numpy as np

from llds.core import ControlSequence, LogControlSequence, LogTrajectory, Trajectory
from llds.errors import (
    DimensionMismatchError,
    GapInTimeError,
    NonPositiveEntryError,
    SeriesIOError,
    SeriesParseError,
)

logger = logging.getLogger("llds")

PathLike = Union[str, Path]
SeriesData = Union[Trajectory, LogTrajectory, ControlSequence, LogControlSequence, np.ndarray]


def format_float(value: float) -> str:
    """Render a double with 17 significant digits (lossless)."""
    return format(float(value), ".17g")


@contextmanager
def atomic_write(path: PathLike) -> Iterator[io.TextIOBase]:
    """
    Open a temporary file next to ``path`` and rename it over ``path`` on success.

    Nothing is left behind when the body raises.
    """
    target = Path(path)
    directory = target.parent if str(target.parent) else Path(".")
    try:
        fd, tmp_name = tempfile.mkstemp(prefix=f".{target.name}.", suffix=".tmp", dir=directory)
    except OSError as e:
        raise SeriesIOError(f"cannot write {target}: {e}") from e
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            yield handle
        os.replace(tmp_name, target)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise


@dataclass(frozen=True)
class SeriesFile:
    """Parsed contents of a series CSV."""

    start: int  # step label of the first row
    columns: tuple[str, ...]  # data column names, excluding "t"
    values: np.ndarray  # rows×len(columns)

    @property
    def steps(self) -> np.ndarray:
        return np.arange(self.start, self.start + self.values.shape[0])


def load_series_file(path: PathLike, require_positive: bool = True) -> SeriesFile:
    """
    Parse a series CSV.

    Raises:
        SeriesIOError: If the file cannot be opened
        SeriesParseError: On malformed header, ragged rows, or non-numeric cells
            (row and column cited)
        NonPositiveEntryError: If ``require_positive`` and a cell is <= 0
        GapInTimeError: If ``t`` does not increase by exactly 1
    """
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8", newline="") as f:
            rows = [row for row in csv.reader(f) if row and any(cell.strip() for cell in row)]
    except OSError as e:
        raise SeriesIOError(f"cannot read {path}: {e}") from e

    if not rows:
        raise SeriesParseError(f"{path}: file is empty")
    header = [cell.strip() for cell in rows[0]]
    if len(header) < 2 or header[0] != "t":
        raise SeriesParseError(f"{path}: header must start with 't' followed by data columns")
    columns = tuple(header[1:])
    data_rows = rows[1:]
    if not data_rows:
        raise SeriesParseError(f"{path}: no data rows")

    steps: list[int] = []
    values = np.empty((len(data_rows), len(columns)))
    for r, row in enumerate(data_rows):
        line = r + 2  # 1-based, counting the header
        if len(row) != len(header):
            raise SeriesParseError(
                f"{path}: row {line} has {len(row)} cells, header has {len(header)}"
            )
        try:
            steps.append(int(row[0].strip()))
        except ValueError:
            raise SeriesParseError(
                f"{path}: row {line}, column 't': {row[0]!r} is not an integer"
            ) from None
        for k, cell in enumerate(row[1:]):
            try:
                value = float(cell.strip())
            except ValueError:
                raise SeriesParseError(
                    f"{path}: row {line}, column {columns[k]!r}: {cell!r} is not a number"
                ) from None
            if not np.isfinite(value):
                raise SeriesParseError(
                    f"{path}: row {line}, column {columns[k]!r}: {cell!r} is not finite"
                )
            if require_positive and value <= 0:
                raise NonPositiveEntryError(
                    f"{path}: row {line}, column {columns[k]!r}: {cell!r} must be > 0"
                )
            values[r, k] = value
        if r > 0 and steps[r] != steps[r - 1] + 1:
            raise GapInTimeError(
                f"{path}: row {line}: t goes from {steps[r - 1]} to {steps[r]}, expected +1"
            )

    values.flags.writeable = False
    return SeriesFile(start=steps[0], columns=columns, values=values)


def read_series(
    path: PathLike, controls: bool = False
) -> Union[Trajectory, ControlSequence]:
    """Read a series CSV as a :class:`Trajectory`, or a :class:`ControlSequence` if ``controls``."""
    series = load_series_file(path)
    logger.debug(f"Read {series.values.shape[0]} rows x {len(series.columns)} columns from {path}")
    if controls:
        return ControlSequence(inputs=series.values)
    return Trajectory(states=series.values)


def _as_rows(data: SeriesData) -> np.ndarray:
    if isinstance(data, (Trajectory, LogTrajectory)):
        return data.states
    if isinstance(data, (ControlSequence, LogControlSequence)):
        return data.inputs
    return np.atleast_2d(np.asarray(data, dtype=np.float64))


def default_columns(prefix: str, count: int) -> tuple[str, ...]:
    return tuple(f"{prefix}{i + 1}" for i in range(count))


def write_series(
    path: PathLike,
    data: SeriesData,
    columns: Optional[Sequence[str]] = None,
    start: int = 1,
    predicted: Optional[SeriesData] = None,
) -> None:
    """
    Write a series CSV atomically.

    Args:
        path: output file
        data: trajectory, log trajectory, control sequence or a rows×k array
        columns: data column names; defaults to ``x1..xn`` (``u1..um`` for controls)
        start: step label of the first row
        predicted: optional overlay of the same shape; columns are then written
            as pairs ``xi,xi_pred``
    """
    rows = _as_rows(data)
    if columns is None:
        prefix = "u" if isinstance(data, (ControlSequence, LogControlSequence)) else "x"
        columns = default_columns(prefix, rows.shape[1])
    columns = tuple(columns)
    if len(columns) != rows.shape[1]:
        raise DimensionMismatchError(f"{len(columns)} column names for {rows.shape[1]} columns")

    header = ["t"]
    if predicted is not None:
        overlay = _as_rows(predicted)
        if overlay.shape != rows.shape:
            raise DimensionMismatchError(
                f"prediction shape {overlay.shape} differs from data shape {rows.shape}"
            )
        for name in columns:
            header.extend([name, f"{name}_pred"])
        table = np.empty((rows.shape[0], 2 * rows.shape[1]))
        table[:, 0::2] = rows
        table[:, 1::2] = overlay
    else:
        header.extend(columns)
        table = rows

    try:
        with atomic_write(path) as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(header)
            for i, row in enumerate(table):
                writer.writerow([str(start + i), *(format_float(v) for v in row)])
    except OSError as e:
        raise SeriesIOError(f"cannot write {path}: {e}") from e
    logger.debug(f"Wrote {table.shape[0]} rows to {path}")
