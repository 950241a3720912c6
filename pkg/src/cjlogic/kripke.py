"""Finite Kripke models for the combined logic.

A model has worlds ``0..n-1``, a preorder ``rel`` and a hereditary valuation
``val``. Intuitionistic implication quantifies over successors, classical
implication is evaluated at the current world only.

Two evaluators are provided. :func:`satisfies` follows the inductive
satisfaction clauses world by world; :func:`extension` computes the whole set
of satisfying worlds as a bitmask and is what the enumerators use. The test
suite keeps them in agreement.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator, Mapping, Sequence

from . import config
from .syntax import And, Atom, Bottom, Formula, ImpC, ImpI, Or, atoms, render

__all__ = [
    "KripkeModel", "Violation", "KripkeWitness", "InvalidModelError",
    "validate_model", "satisfies", "extension", "heredity_failure", "heredity_holds",
    "valid_in_model", "consequence_in_model",
    "preorders", "upsets", "enumerate_models", "countermodel_search",
    "heredity_failure_search", "random_model", "random_countermodel_search",
    "model_from_json", "model_to_json", "load_model",
]


@dataclass(frozen=True)
class KripkeModel:
    worlds: int
    rel: frozenset[tuple[int, int]]
    val: Mapping[str, frozenset[int]] = field(default_factory=dict)
    _succ: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "rel", frozenset((int(a), int(b)) for a, b in self.rel))
        object.__setattr__(
            self, "val", {str(p): frozenset(int(w) for w in ws) for p, ws in sorted(self.val.items())}
        )
        succ = [0] * max(self.worlds, 0)
        for a, b in self.rel:
            if 0 <= a < self.worlds and 0 <= b < self.worlds:
                succ[a] |= 1 << b
        object.__setattr__(self, "_succ", tuple(succ))

    def successors(self, w: int) -> list[int]:
        mask = self._succ[w]
        return [v for v in range(self.worlds) if mask >> v & 1]

    @property
    def full_mask(self) -> int:
        return (1 << self.worlds) - 1

    def with_val(self, val: Mapping[str, Iterable[int]]) -> KripkeModel:
        return KripkeModel(self.worlds, self.rel, {p: frozenset(ws) for p, ws in val.items()})


@dataclass(frozen=True)
class Violation:
    kind: str  # "worlds" | "range" | "reflexivity" | "transitivity" | "heredity"
    detail: tuple

    def __str__(self) -> str:
        if self.kind == "reflexivity":
            return f"missing reflexive pair ({self.detail[0]}, {self.detail[0]})"
        if self.kind == "transitivity":
            (a, b), (_, c) = self.detail
            return f"transitivity: ({a},{b}) and ({b},{c}) present but ({a},{c}) missing"
        if self.kind == "heredity":
            p, (a, b) = self.detail
            return f"heredity: {p} holds at {a} but not at its successor {b}"
        return f"{self.kind}: {self.detail}"


class InvalidModelError(ValueError):
    def __init__(self, violations: Sequence[Violation]):
        self.violations = list(violations)
        super().__init__("invalid Kripke model: " + "; ".join(map(str, self.violations)))


def validate_model(m: KripkeModel) -> list[Violation]:
    """Every violation of the model conditions; an empty list means the model is valid."""
    out: list[Violation] = []
    if m.worlds < 1:
        return [Violation("worlds", (m.worlds,))]
    for pair in sorted(m.rel):
        if not all(0 <= w < m.worlds for w in pair):
            out.append(Violation("range", pair))
    for p, ws in m.val.items():
        for w in sorted(ws):
            if not 0 <= w < m.worlds:
                out.append(Violation("range", (p, w)))
    if out:
        return out
    for w in range(m.worlds):
        if (w, w) not in m.rel:
            out.append(Violation("reflexivity", (w,)))
    for a, b in sorted(m.rel):
        for c in m.successors(b):
            if (a, c) not in m.rel:
                out.append(Violation("transitivity", ((a, b), (b, c))))
    for p, ws in m.val.items():
        for a, b in sorted(m.rel):
            if a in ws and b not in ws:
                out.append(Violation("heredity", (p, (a, b))))
    return out


def _require_valid(m: KripkeModel) -> None:
    violations = validate_model(m)
    if violations:
        raise InvalidModelError(violations)


def _sat(m: KripkeModel, w: int, f: Formula) -> bool:
    if isinstance(f, Atom):
        return w in m.val.get(f.name, ())
    if isinstance(f, Bottom):
        return False
    if isinstance(f, And):
        return _sat(m, w, f.left) and _sat(m, w, f.right)
    if isinstance(f, Or):
        return _sat(m, w, f.left) or _sat(m, w, f.right)
    if isinstance(f, ImpI):
        return all(not _sat(m, v, f.left) or _sat(m, v, f.right) for v in m.successors(w))
    if isinstance(f, ImpC):
        return not _sat(m, w, f.left) or _sat(m, w, f.right)
    raise TypeError(f"not a formula: {f!r}")


def satisfies(m: KripkeModel, w: int, f: Formula) -> bool:
    """Whether world ``w`` of ``m`` satisfies ``f``."""
    _require_valid(m)
    if not 0 <= w < m.worlds:
        raise ValueError(f"world {w} out of range for a {m.worlds}-world model")
    return _sat(m, w, f)


def _ext(m: KripkeModel, f: Formula, atom_masks: Mapping[str, int]) -> int:
    if isinstance(f, Atom):
        return atom_masks.get(f.name, 0)
    if isinstance(f, Bottom):
        return 0
    a = _ext(m, f.left, atom_masks)
    b = _ext(m, f.right, atom_masks)
    if isinstance(f, And):
        return a & b
    if isinstance(f, Or):
        return a | b
    if isinstance(f, ImpC):
        return (~a | b) & m.full_mask
    if isinstance(f, ImpI):
        bad = a & ~b
        out = 0
        for w, succ in enumerate(m._succ):
            if not succ & bad:
                out |= 1 << w
        return out
    raise TypeError(f"not a formula: {f!r}")


def _atom_masks(m: KripkeModel) -> dict[str, int]:
    return {p: sum(1 << w for w in ws) for p, ws in m.val.items()}


def extension(m: KripkeModel, f: Formula) -> int:
    """Bitmask of the worlds satisfying ``f`` (bit ``w`` set iff ``w`` satisfies ``f``).

    Does not validate ``m``.
    """
    return _ext(m, f, _atom_masks(m))


def heredity_failure(m: KripkeModel, f: Formula) -> tuple[int, int] | None:
    """First pair ``(w, v)`` in ``rel`` with ``f`` true at ``w`` and false at ``v``."""
    _require_valid(m)
    ext = extension(m, f)
    for w, v in sorted(m.rel):
        if ext >> w & 1 and not ext >> v & 1:
            return (w, v)
    return None


def heredity_holds(m: KripkeModel, f: Formula) -> bool:
    return heredity_failure(m, f) is None


def valid_in_model(m: KripkeModel, f: Formula) -> bool:
    _require_valid(m)
    return extension(m, f) == m.full_mask


def consequence_in_model(m: KripkeModel, gamma: Sequence[Formula], f: Formula) -> bool:
    """Whether every world satisfying all of ``gamma`` satisfies ``f``."""
    _require_valid(m)
    masks = _atom_masks(m)
    premises = m.full_mask
    for g in gamma:
        premises &= _ext(m, g, masks)
    return premises & ~_ext(m, f, masks) == 0


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KripkeWitness:
    model: KripkeModel
    world: int
    formula: Formula

    def __post_init__(self) -> None:
        if not 0 <= self.world < self.model.worlds:
            raise ValueError("witness world out of range")

    def to_json(self) -> dict[str, Any]:
        return {
            "model": model_to_json(self.model),
            "world": self.world,
            "fails": render(self.formula),
        }


def preorders(n: int) -> Iterator[frozenset[tuple[int, int]]]:
    """All preorders on ``n`` worlds.

    Off-diagonal pairs in row-major order are read as bits of a counter; the
    counter runs upwards and non-transitive relations are skipped.
    """
    diag = [(w, w) for w in range(n)]
    off = [(a, b) for a in range(n) for b in range(n) if a != b]
    for bits in range(1 << len(off)):
        succ = [1 << w for w in range(n)]
        for i, (a, b) in enumerate(off):
            if bits >> i & 1:
                succ[a] |= 1 << b
        if all(
            succ[b] & ~succ[a] == 0
            for a in range(n)
            for b in range(n)
            if succ[a] >> b & 1
        ):
            yield frozenset(diag + [p for i, p in enumerate(off) if bits >> i & 1])


def upsets(n: int, rel: Iterable[tuple[int, int]]) -> list[frozenset[int]]:
    """Upward-closed subsets of the worlds, in ascending bitmask order."""
    succ = [0] * n
    for a, b in rel:
        succ[a] |= 1 << b
    out = []
    for mask in range(1 << n):
        if all(succ[w] & ~mask == 0 for w in range(n) if mask >> w & 1):
            out.append(frozenset(w for w in range(n) if mask >> w & 1))
    return out


def _check_budget(max_worlds: int, names: Sequence[str]) -> None:
    if max_worlds < 1:
        raise ValueError("max_worlds must be at least 1")
    if max_worlds > config.max_worlds():
        raise config.BudgetExceeded(
            f"{max_worlds} worlds exceed the enumeration budget of {config.max_worlds()} "
            f"(set {config.MAX_WORLDS_ENV} to raise it)"
        )
    if len(names) > config.max_atoms():
        raise config.BudgetExceeded(
            f"{len(names)} atoms exceed the enumeration budget of {config.max_atoms()} "
            f"(set {config.MAX_ATOMS_ENV} to raise it)"
        )


def enumerate_models(max_worlds: int, names: Sequence[str]) -> Iterator[KripkeModel]:
    """Every model with 1..max_worlds worlds and a hereditary valuation over ``names``.

    Order: world count, then preorder, then valuation (last atom fastest).
    No isomorphism reduction is done.
    """
    for n in range(1, max_worlds + 1):
        for rel in preorders(n):
            ups = upsets(n, rel)
            for combo in itertools.product(ups, repeat=len(names)):
                yield KripkeModel(n, rel, dict(zip(names, combo)))


def countermodel_search(f: Formula, max_worlds: int) -> KripkeWitness | None:
    """First ``(model, world)`` in canonical order where ``f`` fails, or None."""
    names = atoms(f)
    _check_budget(max_worlds, names)
    for m in enumerate_models(max_worlds, names):
        ext = extension(m, f)
        if ext != m.full_mask:
            w = next(w for w in range(m.worlds) if not ext >> w & 1)
            return KripkeWitness(m, w, f)
    return None


def heredity_failure_search(
    f: Formula, max_worlds: int
) -> tuple[KripkeModel, tuple[int, int]] | None:
    """First model in canonical order on which ``f`` is not hereditary."""
    names = atoms(f)
    _check_budget(max_worlds, names)
    for m in enumerate_models(max_worlds, names):
        ext = extension(m, f)
        for w, v in sorted(m.rel):
            if ext >> w & 1 and not ext >> v & 1:
                return m, (w, v)
    return None


def random_model(
    rng: random.Random, n: int, names: Sequence[str], edge_prob: float = 0.3
) -> KripkeModel:
    """A random model: reflexive-transitive closure of a random relation,
    each atom valued by the upward closure of a random set."""
    succ = [1 << w for w in range(n)]
    for a in range(n):
        for b in range(n):
            if a != b and rng.random() < edge_prob:
                succ[a] |= 1 << b
    for k in range(n):
        for a in range(n):
            if succ[a] >> k & 1:
                succ[a] |= succ[k]
    rel = frozenset((a, b) for a in range(n) for b in range(n) if succ[a] >> b & 1)
    val = {}
    for p in names:
        seed_set = [w for w in range(n) if rng.random() < 0.5]
        mask = 0
        for w in seed_set:
            mask |= succ[w]
        val[p] = frozenset(w for w in range(n) if mask >> w & 1)
    return KripkeModel(n, rel, val)


def random_countermodel_search(
    f: Formula, rng: random.Random, samples: int, max_worlds: int
) -> KripkeWitness | None:
    names = atoms(f)
    for _ in range(samples):
        m = random_model(rng, rng.randint(1, max_worlds), names)
        ext = extension(m, f)
        if ext != m.full_mask:
            w = next(w for w in range(m.worlds) if not ext >> w & 1)
            return KripkeWitness(m, w, f)
    return None


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------


def model_to_json(m: KripkeModel) -> dict[str, Any]:
    return {
        "worlds": m.worlds,
        "rel": [list(p) for p in sorted(m.rel)],
        "val": {p: sorted(ws) for p, ws in m.val.items()},
    }


def model_from_json(data: Any) -> KripkeModel:
    """Build and validate a model; raises InvalidModelError with the violation list."""
    try:
        worlds = data["worlds"]
        rel = data["rel"]
        val = data.get("val", {})
        if not isinstance(worlds, int) or isinstance(worlds, bool):
            raise TypeError("'worlds' must be an integer")
        if not all(isinstance(p, (list, tuple)) and len(p) == 2 for p in rel):
            raise TypeError("'rel' must be a list of pairs")
        m = KripkeModel(worlds, frozenset(tuple(p) for p in rel), dict(val))
    except (KeyError, TypeError, AttributeError) as exc:
        raise ValueError(f"malformed model JSON: {exc}") from None
    _require_valid(m)
    return m


def load_model(path: str) -> KripkeModel:
    with open(path, encoding="utf-8") as fh:
        return model_from_json(json.load(fh))
