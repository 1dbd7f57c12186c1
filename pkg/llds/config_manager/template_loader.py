"""
Jinja2 template rendering for generated documents (the SVG overlay plot).
"""

from pathlib import Path
from typing import Any, Dict

from jinja2 import Environment, StrictUndefined


class TemplateLoader:
    """Renders Jinja2 templates loaded from absolute file paths."""

    _env = None  # Cached Jinja2 environment

    @classmethod
    def _get_environment(cls) -> Environment:
        if cls._env is None:
            cls._env = Environment(
                trim_blocks=True,
                lstrip_blocks=True,
                keep_trailing_newline=True,
                undefined=StrictUndefined,
                autoescape=True,
            )
        return cls._env

    @classmethod
    def render_file(cls, file_path: str, variables: Dict[str, Any] | None = None) -> str:
        """
        Load and render a template file.

        Raises:
            FileNotFoundError: If the template file doesn't exist
        """
        path = Path(file_path)
        if not path.exists():
            raise FileNotFoundError(f"Template file not found: {file_path}")
        return cls.render_template(path.read_text(encoding="utf-8"), variables)

    @classmethod
    def render_template(cls, template_string: str, variables: Dict[str, Any] | None = None) -> str:
        """Render a template held in a string."""
        template = cls._get_environment().from_string(template_string)
        return template.render(**(variables or {}))
