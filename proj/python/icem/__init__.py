"""Informationally complete entanglement measures (C++ core)."""

from ._icem import *  # noqa: F401,F403
from ._icem import __doc__  # noqa: F401
