"""Hofer-geometry invariants of symplectic surfaces.

Quasimorphisms via measured contour trees and the Calabi invariant,
area-preserving flow simulation, pipe constructions for disk transport,
and certified bounds for the length spectrum on first homology.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc  # noqa: F401

__version__ = "0.1.0"
