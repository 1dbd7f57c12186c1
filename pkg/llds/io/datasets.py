"""Bundled example data."""

from llds.config_manager import PathResolver
from llds.io.series import SeriesFile, load_series_file

HARE_LYNX_PATH = "config/data/hudson_bay_hare_lynx.csv"


def load_hare_lynx() -> SeriesFile:
    """Hudson's Bay hare and lynx pelts 1900-1920 (thousands), ``t`` = year."""
    return load_series_file(PathResolver.resolve(HARE_LYNX_PATH, must_exist=True))
