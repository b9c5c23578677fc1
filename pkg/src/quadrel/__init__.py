"""Key recovery for binary Goppa codes through codes of quadratic relations."""

from __future__ import annotations

from ._core import BACKEND
from .gf2m import GF2m

__all__ = ["BACKEND", "GF2m", "__version__"]
__version__ = "0.1.0"
