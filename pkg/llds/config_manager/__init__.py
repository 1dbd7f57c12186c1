from llds.config_manager.config_manager import (
    ControlConfig,
    IdentificationConfig,
    LldsConfig,
    LoggingConfig,
    PlotConfig,
    SimulationConfig,
)
from llds.config_manager.path_resolver import PathResolver
from llds.config_manager.template_loader import TemplateLoader

__all__ = [
    # Main configuration class
    "LldsConfig",
    # Sections
    "LoggingConfig",
    "SimulationConfig",
    "IdentificationConfig",
    "ControlConfig",
    "PlotConfig",
    # Utility classes
    "PathResolver",
    "TemplateLoader",
]
