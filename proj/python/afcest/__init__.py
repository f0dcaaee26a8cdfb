"""Partial-sparse channel estimation for amplify-and-forward relay links."""

from ._afcest import *  # noqa: F401,F403
from ._afcest import __version__  # noqa: F401
