"""Hereditarily finite sets, forcing notions, generic filters and names."""

from .errors import *  # noqa: F401,F403
from .sets import *  # noqa: F401,F403
from .syntax import *  # noqa: F401,F403
from .formula import *  # noqa: F401,F403
from .order import *  # noqa: F401,F403
from .choice import *  # noqa: F401,F403
from .generic import *  # noqa: F401,F403
from .names import *  # noqa: F401,F403

__version__ = "0.1.0"
