"""Formulas of the combined language: atoms, falsum, conjunction, disjunction,
intuitionistic implication (``->i``) and classical implication (``->c``).

Concrete syntax::

    formula  := disj (ARROW disj)*        # one arrow kind per chain, right-assoc
    disj     := conj ('|' conj)*          # left-assoc
    conj     := unary ('&' unary)*        # left-assoc
    unary    := '~c' unary | '~i' unary | atom | 'F' | 'T' | '(' formula ')'
    atom     := [a-z][a-zA-Z0-9_]*

``T``, ``~c A`` and ``~i A`` are abbreviations for ``F ->i F``, ``A ->c F`` and
``A ->i F``; the parser expands them and :func:`render` re-sugars them unless
``sugar=False``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Mapping, Union

__all__ = [
    "Atom", "Bottom", "And", "Or", "ImpI", "ImpC", "Formula",
    "BOTTOM", "TOP", "neg_c", "neg_i",
    "ParseError", "AmbiguityError", "ReservedNameError",
    "parse", "render", "atoms", "substitute", "compose", "depth", "subformulas",
    "is_classical", "is_intuitionistic", "is_persistent", "classical_skeleton",
    "is_reserved", "RESERVED_PREFIX",
]


@dataclass(frozen=True, slots=True)
class Atom:
    name: str

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True, slots=True)
class Bottom:
    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True, slots=True)
class And:
    left: Formula
    right: Formula

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True, slots=True)
class Or:
    left: Formula
    right: Formula

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True, slots=True)
class ImpI:
    left: Formula
    right: Formula

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True, slots=True)
class ImpC:
    left: Formula
    right: Formula

    def __str__(self) -> str:
        return render(self)


Formula = Union[Atom, Bottom, And, Or, ImpI, ImpC]
Binary = (And, Or, ImpI, ImpC)

BOTTOM = Bottom()
TOP = ImpI(BOTTOM, BOTTOM)


def neg_c(f: Formula) -> ImpC:
    return ImpC(f, BOTTOM)


def neg_i(f: Formula) -> ImpI:
    return ImpI(f, BOTTOM)


# Skeleton atoms live here; the concrete grammar cannot produce them.
RESERVED_PREFIX = "X"
_RESERVED_RE = re.compile(r"X[0-9]+\Z")


def is_reserved(name: str) -> bool:
    return _RESERVED_RE.match(name) is not None


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


class ParseError(ValueError):
    """Malformed formula text. ``position`` is a 0-based character offset."""

    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


class AmbiguityError(ParseError):
    """``->i`` and ``->c`` chained at one level without parentheses."""


class ReservedNameError(ParseError):
    pass


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<arrow>->[ic])
  | (?P<neg>~[ic])
  | (?P<op>[&|()])
  | (?P<ident>[A-Za-z][A-Za-z0-9_]*)
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append((kind, m.group(), pos))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def advance(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message: str, tok: tuple[str, str, int]) -> ParseError:
        return ParseError(message, tok[2], self.text)

    def formula(self) -> Formula:
        operands = [self.disj()]
        arrows = []
        while self.peek()[0] == "arrow":
            arrows.append(self.advance())
            operands.append(self.disj())
        if not arrows:
            return operands[0]
        kinds = {tok[1] for tok in arrows}
        if len(kinds) > 1:
            first_other = next(tok for tok in arrows if tok[1] != arrows[0][1])
            raise AmbiguityError(
                "mixed '->i' and '->c' without parentheses", first_other[2], self.text
            )
        ctor = ImpI if arrows[0][1] == "->i" else ImpC
        result = operands[-1]
        for left in reversed(operands[:-1]):
            result = ctor(left, result)
        return result

    def disj(self) -> Formula:
        result = self.conj()
        while self.peek()[1] == "|":
            self.advance()
            result = Or(result, self.conj())
        return result

    def conj(self) -> Formula:
        result = self.unary()
        while self.peek()[1] == "&":
            self.advance()
            result = And(result, self.unary())
        return result

    def unary(self) -> Formula:
        tok = self.advance()
        kind, value, pos = tok
        if kind == "neg":
            body = self.unary()
            return neg_c(body) if value == "~c" else neg_i(body)
        if kind == "ident":
            if value == "F":
                return BOTTOM
            if value == "T":
                return TOP
            if is_reserved(value):
                raise ReservedNameError(f"reserved name {value!r}", pos, self.text)
            if not value[0].islower():
                raise self.error(f"atoms must start with a lowercase letter, got {value!r}", tok)
            return Atom(value)
        if value == "(":
            inner = self.formula()
            close = self.advance()
            if close[1] != ")":
                raise self.error("expected ')'", close)
            return inner
        if kind == "eof":
            raise self.error("unexpected end of input", tok)
        raise self.error(f"unexpected token {value!r}", tok)


def parse(text: str) -> Formula:
    """Parse ``text`` into a core formula (abbreviations expanded)."""
    p = _Parser(text)
    result = p.formula()
    tok = p.peek()
    if tok[0] != "eof":
        raise p.error(f"unexpected token {tok[1]!r}", tok)
    return result


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

_PREC_IMP, _PREC_OR, _PREC_AND, _PREC_UNARY, _PREC_ATOM = 1, 2, 3, 4, 5


def _render(f: Formula, sugar: bool) -> tuple[str, int]:
    if isinstance(f, Atom):
        return f.name, _PREC_ATOM
    if isinstance(f, Bottom):
        return "F", _PREC_ATOM
    if sugar and f == TOP:
        return "T", _PREC_ATOM
    if sugar and isinstance(f, (ImpC, ImpI)) and isinstance(f.right, Bottom):
        body, prec = _render(f.left, sugar)
        if prec < _PREC_UNARY:
            body = f"({body})"
        op = "~c" if isinstance(f, ImpC) else "~i"
        return f"{op} {body}", _PREC_UNARY
    left, lp = _render(f.left, sugar)
    right, rp = _render(f.right, sugar)
    if isinstance(f, (And, Or)):
        prec = _PREC_AND if isinstance(f, And) else _PREC_OR
        if lp < prec:
            left = f"({left})"
        if rp <= prec:
            right = f"({right})"
        op = "&" if isinstance(f, And) else "|"
        return f"{left} {op} {right}", prec
    if lp <= _PREC_IMP:
        left = f"({left})"
    # same-kind implications chain to the right; mixed kinds need parentheses
    if rp == _PREC_IMP and type(f.right) is not type(f):
        right = f"({right})"
    op = "->i" if isinstance(f, ImpI) else "->c"
    return f"{left} {op} {right}", _PREC_IMP


def render(f: Formula, sugar: bool = True) -> str:
    """Minimal-parentheses text for ``f``; ``parse(render(f)) == f``."""
    return _render(f, sugar)[0]


# ---------------------------------------------------------------------------
# Structural operations
# ---------------------------------------------------------------------------


def subformulas(f: Formula) -> Iterator[Formula]:
    """Pre-order, left before right."""
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        if isinstance(g, Binary):
            stack.append(g.right)
            stack.append(g.left)


def atoms(f: Formula) -> tuple[str, ...]:
    """Atom names of ``f`` in first-occurrence order."""
    seen: dict[str, None] = {}
    for g in subformulas(f):
        if isinstance(g, Atom):
            seen.setdefault(g.name, None)
    return tuple(seen)


def depth(f: Formula) -> int:
    if isinstance(f, Binary):
        return 1 + max(depth(f.left), depth(f.right))
    return 0


def substitute(sigma: Mapping[str, Formula], f: Formula) -> Formula:
    """Uniform substitution; atoms missing from ``sigma`` are left alone."""
    if isinstance(f, Atom):
        return sigma.get(f.name, f)
    if isinstance(f, Bottom):
        return f
    left = substitute(sigma, f.left)
    right = substitute(sigma, f.right)
    if left is f.left and right is f.right:
        return f
    return type(f)(left, right)


def compose(sigma: Mapping[str, Formula], tau: Mapping[str, Formula]) -> dict[str, Formula]:
    """The substitution that applies ``tau`` first, then ``sigma``."""
    out = {name: substitute(sigma, g) for name, g in tau.items()}
    for name, g in sigma.items():
        out.setdefault(name, g)
    return out


def is_classical(f: Formula) -> bool:
    return not any(isinstance(g, ImpI) for g in subformulas(f))


def is_intuitionistic(f: Formula) -> bool:
    return not any(isinstance(g, ImpC) for g in subformulas(f))


def is_persistent(f: Formula) -> bool:
    if isinstance(f, (Atom, Bottom, ImpI)):
        return True
    if isinstance(f, (And, Or)):
        return is_persistent(f.left) and is_persistent(f.right)
    return False


def classical_skeleton(f: Formula) -> tuple[Formula, dict[str, Formula]]:
    """Abstract every maximal ``->i`` subformula into a fresh reserved atom.

    Syntactically equal subformulas share one atom. Returns ``(s, tau)`` with
    ``s`` classical and ``substitute(tau, s) == f``.
    """
    taken = set(atoms(f))
    table: dict[Formula, Atom] = {}
    tau: dict[str, Formula] = {}
    counter = 0

    def fresh() -> str:
        nonlocal counter
        while f"{RESERVED_PREFIX}{counter}" in taken:
            counter += 1
        name = f"{RESERVED_PREFIX}{counter}"
        counter += 1
        return name

    def walk(g: Formula) -> Formula:
        if isinstance(g, ImpI):
            if g not in table:
                name = fresh()
                table[g] = Atom(name)
                tau[name] = g
            return table[g]
        if isinstance(g, (Atom, Bottom)):
            return g
        return type(g)(walk(g.left), walk(g.right))

    return walk(f), tau
