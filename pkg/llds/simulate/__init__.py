"""Stepping, simulation with log-normal noise, and fixed points."""

from llds.simulate.dynamics import fixed_point, simulate, step, step_log
from llds.simulate.noise import NoiseSpec, sample_noise

__all__ = [
    "NoiseSpec",
    "sample_noise",
    "step",
    "step_log",
    "simulate",
    "fixed_point",
]
