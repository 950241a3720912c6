"""Three-valued semantics in the style of the logic of paradox.

A truth value is a nonempty subset of ``{0, 1}``: ``t = {1}``, ``b = {0, 1}``,
``f = {0}``. A value is *designated* when it contains 1. The two
implications differ only in their truth condition: ``A ->c B`` is true when
``A`` is (at least) false or ``B`` is true, while ``A ->i B`` is true when
``A`` is not true or ``B`` is true. Both are false when ``A`` is true and
``B`` is false.
"""

from __future__ import annotations

import itertools
from enum import Enum
from typing import Iterable, Iterator, Mapping, Sequence

from . import config
from .syntax import And, Atom, Bottom, Formula, ImpC, ImpI, Or, atoms, is_classical

__all__ = [
    "TruthValue", "T", "B", "F", "VALUE_ORDER", "Valuation3",
    "eval3", "valuations", "find_countervaluation", "is_3_valid",
    "consequence3", "consequence3_counterexample",
    "eval2", "is_two_valued_tautology", "deformation_check",
    "NotClassicalError", "valuation_from_json", "valuation_to_json",
]


class TruthValue(Enum):
    F = frozenset({0})
    B = frozenset({0, 1})
    T = frozenset({1})

    @property
    def designated(self) -> bool:
        return 1 in self.value

    @property
    def symbol(self) -> str:
        return self.name.lower()

    @classmethod
    def from_flags(cls, true: bool, false: bool) -> TruthValue:
        if true and false:
            return cls.B
        if true:
            return cls.T
        if false:
            return cls.F
        raise ValueError("a truth value must contain 0 or 1")

    @classmethod
    def from_symbol(cls, s: str) -> TruthValue:
        try:
            return cls[s.upper()]
        except KeyError:
            raise ValueError(f"unknown truth value {s!r}; expected t, b or f") from None

    def __repr__(self) -> str:
        return self.symbol


T, B, F = TruthValue.T, TruthValue.B, TruthValue.F

# Canonical enumeration order for valuations.
VALUE_ORDER = (F, B, T)

Valuation3 = Mapping[str, TruthValue]


def _flags(v: Valuation3, f: Formula) -> tuple[bool, bool]:
    """(1 in value, 0 in value) by the membership clauses."""
    if isinstance(f, Atom):
        val = v.get(f.name, F).value
        return 1 in val, 0 in val
    if isinstance(f, Bottom):
        return False, True
    lt, lf = _flags(v, f.left)
    rt, rf = _flags(v, f.right)
    if isinstance(f, And):
        return lt and rt, lf or rf
    if isinstance(f, Or):
        return lt or rt, lf and rf
    if isinstance(f, ImpC):
        return lf or rt, lt and rf
    if isinstance(f, ImpI):
        return (not lt) or rt, lt and rf
    raise TypeError(f"not a formula: {f!r}")


def eval3(v: Valuation3, f: Formula) -> TruthValue:
    """Value of ``f`` under ``v``; atoms absent from ``v`` count as ``f``."""
    return TruthValue.from_flags(*_flags(v, f))


def valuations(names: Sequence[str]) -> Iterator[dict[str, TruthValue]]:
    """All valuations over ``names``: odometer order, last atom fastest, f < b < t."""
    for combo in itertools.product(VALUE_ORDER, repeat=len(names)):
        yield dict(zip(names, combo))


def _atoms_of(formulas: Iterable[Formula]) -> tuple[str, ...]:
    seen: dict[str, None] = {}
    for f in formulas:
        for name in atoms(f):
            seen.setdefault(name, None)
    return tuple(seen)


def _guard(names: Sequence[str], cap: int | None) -> None:
    cap = config.atom_cap() if cap is None else cap
    if len(names) > cap:
        raise config.BudgetExceeded(
            f"{len(names)} atoms exceed the valuation cap of {cap}"
        )


def consequence3_counterexample(
    gamma: Sequence[Formula], f: Formula, cap: int | None = None
) -> dict[str, TruthValue] | None:
    """First valuation designating every premise but not ``f``, or None."""
    names = _atoms_of([*gamma, f])
    _guard(names, cap)
    for v in valuations(names):
        if all(_flags(v, g)[0] for g in gamma) and not _flags(v, f)[0]:
            return v
    return None


def consequence3(gamma: Sequence[Formula], f: Formula, cap: int | None = None) -> bool:
    return consequence3_counterexample(gamma, f, cap) is None


def find_countervaluation(f: Formula, cap: int | None = None) -> dict[str, TruthValue] | None:
    return consequence3_counterexample((), f, cap)


def is_3_valid(f: Formula, cap: int | None = None) -> bool:
    return find_countervaluation(f, cap) is None


# ---------------------------------------------------------------------------
# Two-valued side, used as the oracle for the classical fragment
# ---------------------------------------------------------------------------


class NotClassicalError(ValueError):
    pass


def eval2(assignment: Mapping[str, bool], f: Formula) -> bool:
    """Classical truth value of a classical formula; ``->c`` is material."""
    if isinstance(f, Atom):
        return assignment.get(f.name, False)
    if isinstance(f, Bottom):
        return False
    if isinstance(f, And):
        return eval2(assignment, f.left) and eval2(assignment, f.right)
    if isinstance(f, Or):
        return eval2(assignment, f.left) or eval2(assignment, f.right)
    if isinstance(f, ImpC):
        return (not eval2(assignment, f.left)) or eval2(assignment, f.right)
    raise NotClassicalError(f"'->i' has no two-valued reading: {f}")


def is_two_valued_tautology(f: Formula, cap: int | None = None) -> bool:
    if not is_classical(f):
        raise NotClassicalError(f"not a classical formula: {f}")
    names = atoms(f)
    _guard(names, cap)
    return all(
        eval2(dict(zip(names, bits)), f)
        for bits in itertools.product((False, True), repeat=len(names))
    )


def deformation_check(f: Formula, cap: int | None = None) -> bool:
    """Whether the two-valued and three-valued verdicts on ``f`` agree."""
    return is_two_valued_tautology(f, cap) == is_3_valid(f, cap)


def valuation_from_json(data: Mapping[str, str]) -> dict[str, TruthValue]:
    if not isinstance(data, Mapping):
        raise ValueError("valuation must be a JSON object")
    return {str(k): TruthValue.from_symbol(str(s)) for k, s in data.items()}


def valuation_to_json(v: Valuation3) -> dict[str, str]:
    return {k: val.symbol for k, val in v.items()}
