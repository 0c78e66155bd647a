"""Python bindings for the ocnwb library."""

from ._core import *  # noqa: F401,F403
from ._core import OMEGA, Net, ParseError, RankInapplicable, UnknownState  # noqa: F401
