"""Data-driven interpolation, approximation and way-point control for LPV systems.

A single recorded trajectory of a linear parameter-varying system, arranged
in Hankel matrices, stands in for a model. Missing samples of a new
trajectory under a new scheduling signal are then filled in by solving linear
equations in the Hankel coefficients.
"""
from .signals import *  # noqa: F401,F403
from .hankel import *  # noqa: F401,F403
from .numerics import *  # noqa: F401,F403
from .conditions import *  # noqa: F401,F403
from .interpolate import *  # noqa: F401,F403
from .approximate import *  # noqa: F401,F403
from .control import *  # noqa: F401,F403
from .lpv_sim import *  # noqa: F401,F403
from . import io  # noqa: F401

__version__ = "0.1.0"
