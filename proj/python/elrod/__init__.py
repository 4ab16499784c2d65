"""Closed and quasiperiodic elastic rod centerlines."""

from ._elrod import *  # noqa: F401,F403
from ._elrod import __doc__  # noqa: F401
