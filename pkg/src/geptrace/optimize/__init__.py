"""Gradient ascent on the unconstrained objective."""

from .ascent import AscentConfig, AscentResult, ascend, auto_step, init_random

__all__ = ["AscentConfig", "AscentResult", "ascend", "auto_step", "init_random"]
