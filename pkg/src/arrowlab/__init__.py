"""arrowlab: build finite arrow algebras and verify their laws."""

from .core import ArrowAlgebra, ArrowStructure, InputError, frame_algebra, verify_algebra

__all__ = [
    "ArrowAlgebra",
    "ArrowStructure",
    "InputError",
    "frame_algebra",
    "verify_algebra",
]

__version__ = "0.1.0"
