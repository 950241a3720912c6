"""Enumeration budgets. Each default can be overridden by an environment variable."""

from __future__ import annotations

import os

MAX_WORLDS_ENV = "CJLOGIC_MAX_WORLDS"
MAX_ATOMS_ENV = "CJLOGIC_MAX_ATOMS"
ATOM_CAP_ENV = "CJLOGIC_ATOM_CAP"

DEFAULT_MAX_WORLDS = 4
DEFAULT_MAX_ATOMS = 3
DEFAULT_ATOM_CAP = 12

# Two-valued tables are cheap enough to allow larger CL skeletons.
TAUTOLOGY_ATOM_CAP = 20


class BudgetExceeded(RuntimeError):
    """An exhaustive enumeration would exceed its configured budget."""


def _read(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from None
    if value < 0:
        raise ValueError(f"{name} must be non-negative")
    return value


def max_worlds() -> int:
    """Largest world count the Kripke model enumerator will visit."""
    return _read(MAX_WORLDS_ENV, DEFAULT_MAX_WORLDS)


def max_atoms() -> int:
    """Largest number of atoms the Kripke model enumerator will value."""
    return _read(MAX_ATOMS_ENV, DEFAULT_MAX_ATOMS)


def atom_cap() -> int:
    """Largest number of atoms for truth-table enumeration."""
    return _read(ATOM_CAP_ENV, DEFAULT_ATOM_CAP)
