"""
Flat key-value model files.

The format is a small YAML document whose matrices are quoted, space-separated,
row-major lists of 17-significant-digit decimals::

    n: 2
    m: 0
    A: "0.73999999999999999 -0.37 0.20999999999999999 0.69999999999999996"
    c: "2 0.23000000000000001"
    sigma_hat: "0.12"
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

import numpy as np
import yaml

from llds.core import LogLinearModel
from llds.errors import SeriesIOError, SeriesParseError
from llds.io.series import atomic_write, format_float

PathLike = Union[str, Path]


@dataclass(frozen=True)
class ModelFile:
    """A model plus the optional noise estimate it was fitted with."""

    model: LogLinearModel
    sigma_hat: Optional[float] = None


def _join(values: np.ndarray) -> str:
    return " ".join(format_float(v) for v in np.ravel(values))


def _numbers(document: dict, key: str, count: int, path: Path) -> np.ndarray:
    if key not in document:
        raise SeriesParseError(f"{path}: missing key '{key}'")
    try:
        values = [float(token) for token in str(document[key]).split()]
    except ValueError:
        raise SeriesParseError(f"{path}: key '{key}' holds a non-numeric entry") from None
    if len(values) != count:
        raise SeriesParseError(f"{path}: key '{key}' has {len(values)} entries, expected {count}")
    return np.array(values)


def write_model_file(
    path: PathLike, model: LogLinearModel, sigma_hat: Optional[float] = None
) -> None:
    """Write ``model`` (and ``sigma_hat`` if given) atomically."""
    lines = [
        "# llds log-linear model",
        f"n: {model.n}",
        f"m: {model.m}",
        f'A: "{_join(model.A)}"',
        f'c: "{_join(model.c)}"',
    ]
    if model.B is not None:
        lines.append(f'B: "{_join(model.B)}"')
    if sigma_hat is not None:
        lines.append(f'sigma_hat: "{format_float(sigma_hat)}"')
    try:
        with atomic_write(path) as handle:
            handle.write("\n".join(lines) + "\n")
    except OSError as e:
        raise SeriesIOError(f"cannot write {path}: {e}") from e


def read_model_file(path: PathLike) -> ModelFile:
    """
    Read a model file.

    Raises:
        SeriesIOError: If the file cannot be opened
        SeriesParseError: If keys are missing or malformed
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise SeriesIOError(f"cannot read {path}: {e}") from e
    try:
        document = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise SeriesParseError(f"{path}: {e}") from e
    if not isinstance(document, dict):
        raise SeriesParseError(f"{path}: expected 'key: value' lines")

    try:
        n = int(document["n"])
        m = int(document.get("m", 0))
    except (KeyError, TypeError, ValueError):
        raise SeriesParseError(f"{path}: 'n' and 'm' must be integers") from None
    if n < 1 or m < 0:
        raise SeriesParseError(f"{path}: need n >= 1 and m >= 0, got n={n}, m={m}")

    A = _numbers(document, "A", n * n, path).reshape(n, n)
    c = _numbers(document, "c", n, path)
    B = _numbers(document, "B", n * m, path).reshape(n, m) if m else None
    sigma_hat = None
    if "sigma_hat" in document:
        sigma_hat = float(_numbers(document, "sigma_hat", 1, path)[0])
    return ModelFile(model=LogLinearModel(A=A, c=c, B=B), sigma_hat=sigma_hat)
