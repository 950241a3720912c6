"""Combined intuitionistic and classical propositional logic: Kripke and
three-valued semantics, Hilbert proof checking, and a reproduction harness."""

from .syntax import (
    BOTTOM, TOP, And, Atom, Bottom, Formula, ImpC, ImpI, Or, atoms, classical_skeleton,
    is_classical, is_intuitionistic, is_persistent, parse, render, substitute,
)

__version__ = "0.1.0"

__all__ = [
    "BOTTOM", "TOP", "And", "Atom", "Bottom", "Formula", "ImpC", "ImpI", "Or", "atoms",
    "classical_skeleton", "is_classical", "is_intuitionistic", "is_persistent", "parse",
    "render", "substitute",
]
