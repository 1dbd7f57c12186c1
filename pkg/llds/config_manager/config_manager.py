from __future__ import annotations

import logging
import os
from dataclasses import asdict, dataclass, field, fields
from typing import Any, Dict

import yaml

from llds.config_manager.path_resolver import PathResolver
from llds.errors import ConfigError

logger = logging.getLogger("llds")


# ---------- Config Schema ----------
@dataclass
class LoggingConfig:
    """Logging configuration."""

    debug: bool = False
    rich_text: bool = True


@dataclass
class SimulationConfig:
    """Simulation configuration."""

    log_limit: float = 700.0  # |log-state| above this raises StateOverflowError
    default_seed: int = 0


@dataclass
class IdentificationConfig:
    """System identification configuration."""

    rank_tolerance: float = 1e-12  # relative pivot threshold of the QR rank test


@dataclass
class ControlConfig:
    """Bounded control solver configuration."""

    max_iterations: int = 100_000
    stationarity_tolerance: float = 1e-6
    armijo_fraction: float = 1e-4
    backtrack_factor: float = 0.5


@dataclass
class PlotConfig:
    """SVG overlay plot configuration."""

    pane_width: int = 640
    pane_height: int = 240
    margin_fraction: float = 0.05
    template: str = "config/templates/overlay.svg.jinja2"

    def get_template_path(self) -> str:
        """Get resolved absolute path to the SVG template."""
        return str(PathResolver.resolve(self.template, must_exist=True))


def _section(section_cls, data: Dict[str, Any] | None, name: str):
    data = data or {}
    known = {f.name for f in fields(section_cls)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ConfigError(f"unknown keys in '{name}' section: {', '.join(unknown)}")
    return section_cls(**data)


@dataclass
class LldsConfig:
    """Complete llds configuration schema."""

    logging: LoggingConfig = field(default_factory=LoggingConfig)
    simulation: SimulationConfig = field(default_factory=SimulationConfig)
    identification: IdentificationConfig = field(default_factory=IdentificationConfig)
    control: ControlConfig = field(default_factory=ControlConfig)
    plot: PlotConfig = field(default_factory=PlotConfig)

    def to_dict(self) -> Dict[str, Any]:
        """Convert config to dictionary."""
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "LldsConfig":
        """Create config from dictionary."""
        unknown = sorted(set(data) - {f.name for f in fields(cls)})
        if unknown:
            raise ConfigError(f"unknown config sections: {', '.join(unknown)}")
        return cls(
            logging=_section(LoggingConfig, data.get("logging"), "logging"),
            simulation=_section(SimulationConfig, data.get("simulation"), "simulation"),
            identification=_section(
                IdentificationConfig, data.get("identification"), "identification"
            ),
            control=_section(ControlConfig, data.get("control"), "control"),
            plot=_section(PlotConfig, data.get("plot"), "plot"),
        )

    @classmethod
    def from_yaml(
        cls,
        path: str,
        use_path_resolver: bool = True,
        create_if_missing: bool = False,
    ) -> "LldsConfig":
        """
        Create config from YAML file.

        Args:
            path: Path to YAML config file (relative or absolute).
                 If use_path_resolver=True (default), PathResolver checks the
                 working dir first, then the package dir.
            use_path_resolver: If False, use path as-is.
            create_if_missing: If True, write the defaults to ``path`` when it does
                 not exist and return them.

        Raises:
            FileNotFoundError: If the file doesn't exist and create_if_missing=False
            ConfigError: If the file holds unknown sections or keys
        """
        if use_path_resolver:
            resolved = PathResolver.resolve(path, create_if_missing=create_if_missing)
            final_path = str(resolved)
        else:
            final_path = path

        if not os.path.exists(final_path):
            if not create_if_missing:
                raise FileNotFoundError(f"Config file not found: {final_path}")
            os.makedirs(os.path.dirname(final_path) or ".", exist_ok=True)
            default_config = cls()
            with open(final_path, "w", encoding="utf-8") as f:
                yaml.dump(default_config.to_dict(), f, sort_keys=False, default_flow_style=False)
            logger.info(f"Created default config at: {final_path}")
            return default_config

        with open(final_path, "r", encoding="utf-8") as f:
            try:
                data = yaml.safe_load(f)
            except yaml.YAMLError as e:
                raise ConfigError(f"{final_path}: {e}") from e

        if not data:
            logger.warning(f"Empty config file at {final_path}, using defaults")
            return cls()
        if not isinstance(data, dict):
            raise ConfigError(f"{final_path}: top level must be a mapping")
        try:
            return cls.from_dict(data)
        except TypeError as e:
            raise ConfigError(f"{final_path}: {e}") from e
