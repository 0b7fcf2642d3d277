"""Spectral robustness analysis of leader-follower consensus networks."""

from ._gspec import *  # noqa: F401,F403
from ._gspec import __doc__ as _doc

__doc__ = _doc
