"""Euler-class cocycles on the area-preserving diffeomorphism groups of S^1 and S^2."""
from .config import VERSION as __version__
