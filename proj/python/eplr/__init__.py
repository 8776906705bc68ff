"""Extrapolated polynomial lattice rules."""

from ._eplr import *  # noqa: F401,F403
from ._eplr import __doc__  # noqa: F401
