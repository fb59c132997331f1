"""Planar central configurations of four bodies with masses x, -x, y, -y.

Thin wrapper over the compiled extension ``_cc4``.
"""

from ._cc4 import *  # noqa: F401,F403
from ._cc4 import __doc__ as _doc

__doc__ = _doc
__version__ = "0.1.0"
