"""System identification by least squares."""

from llds.sysid.identify import SysIdResult, estimate_sigma, identify, identify_controlled
from llds.sysid.window import WindowMatch, match_window, window_errors

__all__ = [
    "SysIdResult",
    "identify",
    "identify_controlled",
    "estimate_sigma",
    "WindowMatch",
    "match_window",
    "window_errors",
]
