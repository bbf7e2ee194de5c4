"""
Verification checks, one module per identity, each exposing a `Check` class.
"""

from . import (
    angular_modes,
    heisenberg,
    j_squared,
    matching,
    radial_ode,
    sector_identity,
    t_algebra,
)
from ._base import BaseCheck
