"""
Control problem files (YAML).

Example::

    horizon: 3
    initial_state: [30.0, 4.0]        # or initial_log_state: [...]
    references: refs.csv              # or log_references: [[...], ...]
    state_weight: 1.0                 # scalar (times I) or n×n list
    input_weight: 0.1                 # scalar (times I) or m×m list
    bounds:                           # optional, on the log-inputs
      lower: -1.0
      upper: 1.0

A relative ``references`` path is looked up next to the problem file first;
reference states in that CSV are primal (positive) and are logged on load.
"""

import logging
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any, Dict, Optional, Union

import numpy as np
import yaml

from llds.config_manager import PathResolver
from llds.control import ControlProblem
from llds.core import LogLinearModel, safe_log
from llds.errors import ConfigError, DimensionMismatchError
from llds.io.series import load_series_file

logger = logging.getLogger("llds")


@dataclass
class ControlProblemFile:
    """Raw contents of a problem file, before the model is attached."""

    horizon: int
    state_weight: Any = 1.0
    input_weight: Any = 1.0
    initial_state: Optional[list] = None
    initial_log_state: Optional[list] = None
    references: Optional[str] = None
    log_references: Optional[list] = None
    bounds: Dict[str, Any] = field(default_factory=dict)
    base_dir: Path = field(default_factory=Path.cwd)

    @classmethod
    def from_dict(cls, data: Dict[str, Any], base_dir: Path) -> "ControlProblemFile":
        known = {f.name for f in fields(cls)} - {"base_dir"}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"unknown problem keys: {', '.join(unknown)}")
        if "horizon" not in data:
            raise ConfigError("problem file must set 'horizon'")
        return cls(**data, base_dir=base_dir)

    @classmethod
    def from_yaml(cls, path: Union[str, Path]) -> "ControlProblemFile":
        """
        Load a problem file, resolving ``path`` with :class:`PathResolver`.

        Raises:
            FileNotFoundError: If the file doesn't exist
            ConfigError: If the YAML is malformed or has unknown keys
        """
        resolved = PathResolver.resolve(path, must_exist=True)
        with open(resolved, "r", encoding="utf-8") as f:
            try:
                data = yaml.safe_load(f)
            except yaml.YAMLError as e:
                raise ConfigError(f"{resolved}: {e}") from e
        if not isinstance(data, dict):
            raise ConfigError(f"{resolved}: top level must be a mapping")
        logger.debug(f"Loaded control problem from {resolved}")
        return cls.from_dict(data, base_dir=resolved.parent)

    def _initial_log_state(self) -> np.ndarray:
        if (self.initial_state is None) == (self.initial_log_state is None):
            raise ConfigError("set exactly one of 'initial_state' and 'initial_log_state'")
        if self.initial_log_state is not None:
            return np.asarray(self.initial_log_state, dtype=np.float64)
        return safe_log(self.initial_state, "initial_state")

    def _log_references(self) -> np.ndarray:
        if (self.references is None) == (self.log_references is None):
            raise ConfigError("set exactly one of 'references' and 'log_references'")
        if self.log_references is not None:
            refs = np.atleast_2d(np.asarray(self.log_references, dtype=np.float64))
        else:
            csv_path = PathResolver.resolve(self.references, base_dir=self.base_dir)
            refs = np.log(load_series_file(csv_path).values)
        if refs.shape[0] != self.horizon:
            raise DimensionMismatchError(
                f"{refs.shape[0]} reference rows for horizon {self.horizon}"
            )
        return refs

    def to_problem(self, model: LogLinearModel) -> ControlProblem:
        """Attach ``model`` and build the validated :class:`ControlProblem`."""
        bounds = self.bounds or {}
        unknown = sorted(set(bounds) - {"lower", "upper"})
        if unknown:
            raise ConfigError(f"unknown bounds keys: {', '.join(unknown)}")
        return ControlProblem.build(
            model,
            x1_hat=self._initial_log_state(),
            refs=self._log_references(),
            state_weight=self.state_weight,
            input_weight=self.input_weight,
            lower=bounds.get("lower"),
            upper=bounds.get("upper"),
        )
