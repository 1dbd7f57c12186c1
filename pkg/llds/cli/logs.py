"""
Rich console logging for the llds CLI.

Log records and step status lines go to stderr so stdout stays clean for
results. ``LLDS_NO_COLOR`` (any non-empty value) disables styling.
"""

import logging
import os

from rich.console import Console
from rich.text import Text

LEVEL_STYLES = {
    logging.DEBUG: "dim",
    logging.INFO: "",
    logging.WARNING: "yellow",
    logging.ERROR: "bold red",
    logging.CRITICAL: "bold red",
}


def color_disabled() -> bool:
    return bool(os.environ.get("LLDS_NO_COLOR"))


def make_console(stderr: bool = False) -> Console:
    """Console honoring LLDS_NO_COLOR; never highlights numbers on its own."""
    no_color = color_disabled()
    return Console(stderr=stderr, no_color=no_color, highlight=False, emoji=not no_color)


class LogHandler(logging.Handler):
    """
    Logging handler that renders records through a rich console.

    Args:
        rich_text: Style records by level. If False, print plain lines.
    """

    def __init__(self, rich_text: bool = True):
        super().__init__()
        self.rich_text = rich_text and not color_disabled()
        self.console = make_console(stderr=True)
        self.current_step = ""
        self.is_completed = False
        self.is_success = False

    def emit(self, record):
        try:
            msg = self.format(record)
        except Exception:
            self.handleError(record)
            return
        for line in msg.splitlines():
            if self.rich_text:
                self.console.print(Text(line, style=LEVEL_STYLES.get(record.levelno, "")))
            else:
                self.console.print(line, markup=False)

    def update_step(self, step: str):
        self.current_step = step
        status_symbol = "⚡"
        style = "bold yellow"
        if self.is_completed:
            status_symbol, style = ("✓", "bold green") if self.is_success else ("✗", "bold red")
        if self.rich_text:
            line = Text()
            line.append(f"{status_symbol} ", style=style)
            line.append(step)
            self.console.print(line)
        else:
            self.console.print(f"{status_symbol} {step}", markup=False)

    def finish(self, success: bool, step: str):
        self.is_completed = True
        self.is_success = success
        self.update_step(step)
