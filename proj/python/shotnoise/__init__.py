"""Shot-noise reduction in atomic contacts and STM-luminescence yield analysis."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
