"""Deterministic numerical core for thermal-to-color translation."""

from tirc._tirc import *  # noqa: F401,F403
from tirc._tirc import UNLABELED  # noqa: F401
