"""Hilbert-style proofs for the combined logic.

The base system ``CJ_MINUS`` has the axiom schemas CL (instances of classical
tautologies), CK, ID, CMP, PER (antecedent restricted to persistent
formulas) and the rules MPI and RCN. ``CJ`` adds classical modus ponens
(MPC).

Proof steps carry their full formula; the checker re-matches each one.
"""

from __future__ import annotations

import json
import random
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Sequence, Union

from . import config, generate
from .syntax import (
    Atom, Formula, ImpC, ImpI, ParseError, atoms, classical_skeleton, is_persistent,
    neg_c, parse, render, substitute, Or, And,
)
from .three_valued import (
    find_countervaluation, is_3_valid, is_two_valued_tautology, valuation_to_json,
)

__all__ = [
    "SystemVariant", "AxiomStep", "RuleStep", "Proof", "Mismatch", "Verdict",
    "AXIOMS", "RULES", "SCHEMAS", "match_axiom", "check_rule", "check_proof",
    "proof_from_json", "proof_to_json", "load_proof", "ProofFormatError",
    "mpi_via_mpc", "eliminate_mpi", "example_mpi_via_mpc", "axiom_instance",
    "FuzzReport", "soundness_fuzz",
]


class SystemVariant(Enum):
    CJ_MINUS = "cj-minus"
    CJ = "cj"

    @property
    def rules(self) -> frozenset[str]:
        if self is SystemVariant.CJ:
            return frozenset({"MPI", "RCN", "MPC"})
        return frozenset({"MPI", "RCN"})


AXIOMS = ("CL", "CK", "ID", "CMP", "PER")
RULES = ("MPI", "RCN", "MPC")

_A, _B, _C = Atom("A"), Atom("B"), Atom("C")

# Schema atoms are metavariables.
SCHEMAS: dict[str, Formula] = {
    "CK": ImpC(ImpI(_A, ImpC(_B, _C)), ImpC(ImpI(_A, _B), ImpI(_A, _C))),
    "ID": ImpI(_A, _A),
    "CMP": ImpC(ImpI(_A, _B), ImpC(_A, _B)),
    "PER": ImpC(_A, ImpI(_B, _A)),
}


@dataclass(frozen=True)
class AxiomStep:
    name: str
    formula: Formula


@dataclass(frozen=True)
class RuleStep:
    name: str
    premises: tuple[int, ...]
    formula: Formula


Step = Union[AxiomStep, RuleStep]


@dataclass(frozen=True)
class Proof:
    steps: tuple[Step, ...]
    claim: Formula


class Mismatch(Exception):
    """A step does not fit its axiom schema or rule. ``code`` is machine-readable."""

    def __init__(self, code: str, message: str):
        self.code = code
        self.message = message
        super().__init__(f"{code}: {message}")


def _match(schema: Formula, f: Formula, binding: dict[str, Formula]) -> None:
    if isinstance(schema, Atom):
        bound = binding.get(schema.name)
        if bound is None:
            binding[schema.name] = f
        elif bound != f:
            raise Mismatch(
                "metavariable",
                f"{schema.name} bound to both {render(bound)} and {render(f)}",
            )
        return
    if type(schema) is not type(f):
        raise Mismatch("shape", f"expected a {type(schema).__name__} where {render(f)} occurs")
    if isinstance(schema, (ImpI, ImpC, And, Or)):
        _match(schema.left, f.left, binding)
        _match(schema.right, f.right, binding)


def match_axiom(name: str, f: Formula) -> dict[str, Formula]:
    """Check ``f`` against axiom ``name``; returns the metavariable binding.

    Raises :class:`Mismatch` naming the first failed constraint.
    """
    if name == "CL":
        skeleton, tau = classical_skeleton(f)
        try:
            tautology = is_two_valued_tautology(skeleton, cap=config.TAUTOLOGY_ATOM_CAP)
        except config.BudgetExceeded as exc:
            raise Mismatch("budget", str(exc)) from None
        if not tautology:
            raise Mismatch(
                "non-tautology", f"classical skeleton {render(skeleton)} is not a tautology"
            )
        return tau
    schema = SCHEMAS.get(name)
    if schema is None:
        raise Mismatch("unknown-axiom", f"no axiom named {name!r}")
    binding: dict[str, Formula] = {}
    _match(schema, f, binding)
    if name == "PER" and not is_persistent(binding["A"]):
        raise Mismatch("persistence", f"antecedent {render(binding['A'])} is not persistent")
    return binding


def check_rule(
    name: str, premises: Sequence[Formula], conclusion: Formula, system: SystemVariant
) -> None:
    """Raise :class:`Mismatch` unless ``conclusion`` follows by rule ``name`` in ``system``."""
    if name not in RULES:
        raise Mismatch("unknown-rule", f"no rule named {name!r}")
    if name not in system.rules:
        raise Mismatch("rule-not-in-system", f"{name} is not a rule of {system.value}")
    if name == "RCN":
        if len(premises) != 1:
            raise Mismatch("arity", f"RCN takes 1 premise, got {len(premises)}")
        if not (isinstance(conclusion, ImpI) and conclusion.right == premises[0]):
            raise Mismatch("shape", "RCN conclusion must be B ->i A for premise A")
        return
    if len(premises) != 2:
        raise Mismatch("arity", f"{name} takes 2 premises, got {len(premises)}")
    minor, major = premises
    arrow = ImpI if name == "MPI" else ImpC
    if not isinstance(major, arrow):
        raise Mismatch("shape", f"second premise of {name} must be an implication of the right kind")
    if major.left != minor:
        raise Mismatch("shape", f"antecedent of {render(major)} is not {render(minor)}")
    if major.right != conclusion:
        raise Mismatch("shape", f"conclusion must be {render(major.right)}")


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    step: int | None = None
    code: str | None = None
    reason: str | None = None

    def to_json(self) -> dict[str, Any]:
        if self.accepted:
            return {"accepted": True}
        return {"accepted": False, "step": self.step, "code": self.code, "reason": self.reason}


def check_proof(p: Proof, system: SystemVariant) -> Verdict:
    if not p.steps:
        return Verdict(False, None, "empty-proof", "a proof needs at least one step")
    for k, step in enumerate(p.steps):
        try:
            if isinstance(step, AxiomStep):
                match_axiom(step.name, step.formula)
            else:
                for i in step.premises:
                    if not 0 <= i < k:
                        raise Mismatch("premise-index", f"premise {i} does not refer to an earlier step")
                check_rule(step.name, [p.steps[i].formula for i in step.premises], step.formula, system)
        except Mismatch as exc:
            return Verdict(False, k, exc.code, exc.message)
    if p.steps[-1].formula != p.claim:
        return Verdict(
            False, len(p.steps) - 1, "claim-mismatch",
            f"last step proves {render(p.steps[-1].formula)}, not {render(p.claim)}",
        )
    return Verdict(True)


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------


class ProofFormatError(ValueError):
    pass


def proof_from_json(data: Any) -> Proof:
    try:
        claim = parse(data["claim"])
        steps: list[Step] = []
        for raw in data["steps"]:
            formula = parse(raw["formula"])
            if "axiom" in raw:
                steps.append(AxiomStep(str(raw["axiom"]), formula))
            elif "rule" in raw:
                prem = raw.get("premises", [])
                if not all(isinstance(i, int) and not isinstance(i, bool) for i in prem):
                    raise ProofFormatError("premises must be step indices")
                steps.append(RuleStep(str(raw["rule"]), tuple(prem), formula))
            else:
                raise ProofFormatError("each step needs an 'axiom' or a 'rule' key")
    except (KeyError, TypeError) as exc:
        raise ProofFormatError(f"malformed proof JSON: {exc!r}") from None
    except ParseError as exc:
        raise ProofFormatError(f"bad formula in proof: {exc}") from None
    return Proof(tuple(steps), claim)


def proof_to_json(p: Proof) -> dict[str, Any]:
    steps = []
    for s in p.steps:
        if isinstance(s, AxiomStep):
            steps.append({"axiom": s.name, "formula": render(s.formula)})
        else:
            steps.append({"rule": s.name, "premises": list(s.premises), "formula": render(s.formula)})
    return {"claim": render(p.claim), "steps": steps}


def load_proof(path: str) -> Proof:
    with open(path, encoding="utf-8") as fh:
        return proof_from_json(json.load(fh))


# ---------------------------------------------------------------------------
# MPI from CMP + MPC
# ---------------------------------------------------------------------------


def _shift(step: Step, offset: int) -> Step:
    if isinstance(step, RuleStep):
        return RuleStep(step.name, tuple(i + offset for i in step.premises), step.formula)
    return step


def mpi_via_mpc(proof_a: Proof, proof_imp: Proof) -> Proof:
    """Given proofs of ``A`` and ``A ->i B``, a proof of ``B`` whose last
    three steps are CMP, MPC, MPC."""
    a = proof_a.claim
    imp = proof_imp.claim
    if not (isinstance(imp, ImpI) and imp.left == a):
        raise ValueError("second proof must prove A ->i B for the first proof's A")
    b = imp.right
    steps = list(proof_a.steps)
    ia = len(steps) - 1
    steps.extend(_shift(s, len(proof_a.steps)) for s in proof_imp.steps)
    iimp = len(steps) - 1
    steps.append(AxiomStep("CMP", ImpC(imp, ImpC(a, b))))
    steps.append(RuleStep("MPC", (iimp, len(steps) - 1), ImpC(a, b)))
    steps.append(RuleStep("MPC", (ia, len(steps) - 1), b))
    return Proof(tuple(steps), b)


def eliminate_mpi(p: Proof) -> Proof:
    """Rewrite every MPI step as CMP followed by two MPC steps."""
    steps: list[Step] = []
    where: list[int] = []
    for step in p.steps:
        if isinstance(step, RuleStep) and step.name == "MPI":
            ia, iimp = (where[i] for i in step.premises)
            a, imp = steps[ia].formula, steps[iimp].formula
            steps.append(AxiomStep("CMP", ImpC(imp, ImpC(a, step.formula))))
            steps.append(RuleStep("MPC", (iimp, len(steps) - 1), ImpC(a, step.formula)))
            steps.append(RuleStep("MPC", (ia, len(steps) - 1), step.formula))
        elif isinstance(step, RuleStep):
            steps.append(RuleStep(step.name, tuple(where[i] for i in step.premises), step.formula))
        else:
            steps.append(step)
        where.append(len(steps) - 1)
    return Proof(tuple(steps), p.claim)


def example_mpi_via_mpc() -> Proof:
    """The stored MPI-via-MPC derivation with ``A = p ->i p``, ``B = q ->i (p ->i p)``."""
    a = parse("p ->i p")
    b = ImpI(Atom("q"), a)
    proof_a = Proof((AxiomStep("ID", a),), a)
    proof_imp = Proof(
        (
            AxiomStep("ID", a),
            RuleStep("RCN", (0,), b),
            RuleStep("RCN", (1,), ImpI(a, b)),
        ),
        ImpI(a, b),
    )
    return mpi_via_mpc(proof_a, proof_imp)


# ---------------------------------------------------------------------------
# Soundness fuzzing against the three-valued semantics
# ---------------------------------------------------------------------------

_FUZZ_ATOMS = ("p", "q", "r")

# Fallback tautology shapes when rejection sampling misses.
_TAUTOLOGY_SHAPES = (
    "a | ~c a",
    "a ->c (b ->c a)",
    "(a ->c (b ->c c)) ->c ((a ->c b) ->c (a ->c c))",
    "((a ->c b) ->c a) ->c a",
    "~c (a & ~c a)",
    "(a & b) ->c (b | c)",
    "F ->c a",
)


def axiom_instance(name: str, rng: random.Random, restrict_per: bool = True) -> Formula:
    """A random instance of axiom ``name``.

    With ``restrict_per=False``, PER instances may have a non-persistent
    antecedent (the three-valued semantics does not need the restriction).
    """
    def rand(d: int = 3) -> Formula:
        return generate.random_formula(rng, _FUZZ_ATOMS, d)

    if name == "CL":
        skeleton = None
        for _ in range(20):
            cand = generate.random_formula(rng, ("a", "b", "c"), 4, generate.CLASSICAL)
            if atoms(cand) and is_two_valued_tautology(cand):
                skeleton = cand
                break
        if skeleton is None:
            skeleton = parse(rng.choice(_TAUTOLOGY_SHAPES))
        sigma = generate.random_substitution(rng, atoms(skeleton), _FUZZ_ATOMS, 3)
        return substitute(sigma, skeleton)
    if name == "PER":
        a = generate.random_persistent(rng, _FUZZ_ATOMS, 3) if restrict_per else rand()
        return substitute({"A": a, "B": rand()}, SCHEMAS["PER"])
    schema = SCHEMAS[name]
    return substitute({"A": rand(), "B": rand(), "C": rand()}, schema)


@dataclass
class FuzzReport:
    seed: int
    iterations: int
    axiom_counts: Counter = field(default_factory=Counter)
    rule_counts: Counter = field(default_factory=Counter)
    rejected_premises: int = 0
    failures: list[dict[str, Any]] = field(default_factory=list)
    mpc_exhibit: dict[str, Any] | None = None

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict[str, Any]:
        return {
            "seed": self.seed,
            "iterations": self.iterations,
            "axiom_instances": dict(sorted(self.axiom_counts.items())),
            "rule_applications": dict(sorted(self.rule_counts.items())),
            "discarded_premise_pairs": self.rejected_premises,
            "failures": self.failures,
            "mpc_exhibit": self.mpc_exhibit,
        }


def _record_failure(report: FuzzReport, kind: str, f: Formula) -> None:
    witness = find_countervaluation(f)
    report.failures.append(
        {"kind": kind, "formula": render(f), "witness": valuation_to_json(witness or {})}
    )


def mpc_exhibit() -> dict[str, Any]:
    """Two 3-valid premises whose MPC conclusion is not 3-valid."""
    minor = parse("p | ~c p")
    conclusion = parse("(p & (p ->c q)) ->i q")
    major = ImpC(minor, conclusion)
    witness = find_countervaluation(conclusion)
    return {
        "premises": [render(minor), render(major)],
        "premises_3_valid": is_3_valid(minor) and is_3_valid(major),
        "conclusion": render(conclusion),
        "conclusion_3_valid": witness is None,
        "witness": valuation_to_json(witness or {}),
    }


def soundness_fuzz(seed: int, iterations: int) -> FuzzReport:
    """Check 3-validity of random axiom instances and of MPI/RCN conclusions.

    ``iterations`` instances are drawn for each axiom schema (PER twice: with
    and without the persistence restriction), and ``iterations`` applications
    each of MPI and RCN on 3-valid premises.
    """
    if iterations < 1:
        raise ValueError("iterations must be at least 1")
    rng = random.Random(seed)
    report = FuzzReport(seed, iterations)
    pool: list[Formula] = []

    for name in AXIOMS:
        variants = [("PER", True), ("PER-unrestricted", False)] if name == "PER" else [(name, True)]
        for label, restrict in variants:
            for _ in range(iterations):
                f = axiom_instance(name, rng, restrict)
                if restrict:
                    try:
                        match_axiom(name, f)
                    except Mismatch as exc:
                        report.failures.append(
                            {"kind": f"{label}-not-matched", "formula": render(f), "reason": str(exc)}
                        )
                report.axiom_counts[label] += 1
                if is_3_valid(f):
                    pool.append(f)
                else:
                    _record_failure(report, label, f)

    if not pool:
        return report

    # MPI: minor premise from the pool, consequent either another pool
    # formula or an arbitrary one; pairs whose major premise is not 3-valid
    # are discarded.
    done = 0
    while done < iterations:
        a = rng.choice(pool)
        b = rng.choice(pool) if rng.random() < 0.5 else generate.random_formula(rng, _FUZZ_ATOMS, 3)
        if rng.random() < 0.25:
            b = ImpI(a, b) if rng.random() < 0.5 else Or(b, neg_c(b))
        if not is_3_valid(ImpI(a, b)):
            report.rejected_premises += 1
            continue
        done += 1
        report.rule_counts["MPI"] += 1
        if not is_3_valid(b):
            _record_failure(report, "MPI", b)

    for _ in range(iterations):
        a = rng.choice(pool)
        conclusion = ImpI(generate.random_formula(rng, _FUZZ_ATOMS, 3), a)
        report.rule_counts["RCN"] += 1
        if not is_3_valid(conclusion):
            _record_failure(report, "RCN", conclusion)

    report.mpc_exhibit = mpc_exhibit()
    return report
