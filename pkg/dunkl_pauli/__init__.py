"""
Dunkl-Pauli oscillator with time-dependent mass and frequency under an
Aharonov-Bohm flux: closed-form spectra, the Ermakov-Pinney scaling function,
assembled wavefunctions and independent numerical checks.
"""

__version__ = "0.1.0"

# pylint: disable=wrong-import-position
from . import (
    angular_spectrum,
    checks,
    dunkl_ops,
    entities,
    ermakov,
    errors,
    oracle,
    radial_spectrum,
    solution,
    specfun,
    utils,
)
