"""Combinatorial Heegaard Floer homology and the contact class of open books."""

from .heegaard import build_diagram, is_nice, reverse_diagram
from .homology import contact_class, contact_report, contact_vanishes
from .openbook import OpenBook, StabilizationSpec, example_library, library_book, stabilize

__version__ = "0.1.0"

__all__ = [
    "OpenBook",
    "StabilizationSpec",
    "build_diagram",
    "contact_class",
    "contact_report",
    "contact_vanishes",
    "example_library",
    "is_nice",
    "library_book",
    "reverse_diagram",
    "stabilize",
]
