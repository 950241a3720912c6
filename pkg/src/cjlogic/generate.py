"""Exhaustive and random formula generation for sweeps and fuzzing."""

from __future__ import annotations

import random
from typing import Callable, Hashable, Iterator, Sequence

from .syntax import BOTTOM, And, Atom, Formula, ImpC, ImpI, Or

Connective = Callable[[Formula, Formula], Formula]

ALL = (And, Or, ImpI, ImpC)
CLASSICAL = (And, Or, ImpC)
INTUITIONISTIC = (And, Or, ImpI)


def leaves(names: Sequence[str], bottom: bool = True) -> list[Formula]:
    out: list[Formula] = [Atom(n) for n in names]
    if bottom:
        out.append(BOTTOM)
    return out


def formulas_up_to_depth(
    names: Sequence[str],
    max_depth: int,
    binary: Sequence[Connective] = ALL,
    bottom: bool = True,
) -> list[Formula]:
    """Every formula of depth <= ``max_depth``, literally (grows doubly exponentially)."""
    level = leaves(names, bottom)
    for _ in range(max_depth):
        nxt = leaves(names, bottom)
        for op in binary:
            nxt.extend(op(a, b) for a in level for b in level)
        level = nxt
    return level


def semantic_closure(
    names: Sequence[str],
    max_depth: int,
    key: Callable[[Formula], Hashable],
    binary: Sequence[Connective] = ALL,
    unary: Sequence[Callable[[Formula], Formula]] = (),
    bottom: bool = True,
) -> Iterator[Formula]:
    """Formulas covering every ``key`` value reachable at depth <= ``max_depth``.

    ``key`` must be compositional: formulas built by the same connective from
    arguments with equal keys get equal keys. Then one representative per key
    at each level covers the whole level, and the formulas yielded (all
    combinations of the depth ``max_depth - 1`` representatives, not
    deduplicated) realize every key of every formula up to ``max_depth``.
    """
    base = leaves(names, bottom)
    if max_depth == 0:
        yield from base
        return
    reps: dict[Hashable, Formula] = {}
    for f in base:
        reps.setdefault(key(f), f)
    for _ in range(max_depth - 1):
        current = list(reps.values())
        nxt: dict[Hashable, Formula] = {}
        for f in base:
            nxt.setdefault(key(f), f)
        for op in unary:
            for a in current:
                g = op(a)
                nxt.setdefault(key(g), g)
        for op in binary:
            for a in current:
                for b in current:
                    g = op(a, b)
                    nxt.setdefault(key(g), g)
        reps = nxt
    current = list(reps.values())
    yield from base
    for op in unary:
        for a in current:
            yield op(a)
    for op in binary:
        for a in current:
            for b in current:
                yield op(a, b)


def random_formula(
    rng: random.Random,
    names: Sequence[str],
    max_depth: int,
    binary: Sequence[Connective] = ALL,
    leaf_prob: float = 0.3,
    bottom_prob: float = 0.1,
) -> Formula:
    if max_depth <= 0 or rng.random() < leaf_prob:
        if rng.random() < bottom_prob:
            return BOTTOM
        return Atom(rng.choice(names))
    op = rng.choice(binary)
    return op(
        random_formula(rng, names, max_depth - 1, binary, leaf_prob, bottom_prob),
        random_formula(rng, names, max_depth - 1, binary, leaf_prob, bottom_prob),
    )


def random_persistent(rng: random.Random, names: Sequence[str], max_depth: int) -> Formula:
    """Random formula from the persistent grammar (falsum, atoms, ->i-rooted, & and |)."""
    if max_depth <= 0:
        return BOTTOM if rng.random() < 0.1 else Atom(rng.choice(names))
    roll = rng.random()
    if roll < 0.25:
        return Atom(rng.choice(names))
    if roll < 0.55:
        return ImpI(
            random_formula(rng, names, max_depth - 1),
            random_formula(rng, names, max_depth - 1),
        )
    op = And if roll < 0.8 else Or
    return op(
        random_persistent(rng, names, max_depth - 1),
        random_persistent(rng, names, max_depth - 1),
    )


def random_substitution(
    rng: random.Random, domain: Sequence[str], names: Sequence[str], max_depth: int
) -> dict[str, Formula]:
    return {p: random_formula(rng, names, max_depth) for p in domain}
