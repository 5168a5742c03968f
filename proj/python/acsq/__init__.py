"""Coherent-state quantization toolkit for systems on the half-line.

Thin re-export of the compiled core: fiducial vectors and moment constants,
the quantization map with its lower symbols, model spectra, the coherent
expansion with its evolved phase-space density, and energy contours.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
