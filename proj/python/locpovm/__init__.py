"""Localization POVM toolkit: field states on a periodic grid, localization
densities and interval probabilities, chart geometry, covariance experiments."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
