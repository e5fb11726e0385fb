"""Pseudo-spectral laboratory for a deconvolved Boussinesq system."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
