"""Quasismooth del Pezzo hypersurfaces in weighted projective 3-space."""

from .core import DomainError, InvalidInputError, WeightSystem, canonicalize, fano_index

__version__ = "0.1.0"

__all__ = ["DomainError", "InvalidInputError", "WeightSystem", "canonicalize", "fano_index", "__version__"]
