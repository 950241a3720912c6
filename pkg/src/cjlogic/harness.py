"""Re-derive every mechanically checkable claim about the combined logic.

:func:`reproduce` runs a fixed registry of checks and returns a
:class:`ReproduceReport`. A claim is ``confirmed`` when the check is
exhaustive at the stated bound or follows from confirmed legs,
``bounded-evidence`` when the claim quantifies over all Kripke models and
only a bounded search backs it, and ``expected-exhibit`` for a
counterexample that is supposed to exist.

Exhaustive sweeps over "all formulas of depth <= d" use
:func:`cjlogic.generate.semantic_closure`: formulas are deduplicated level by
level on a compositional semantic fingerprint, which covers every formula of
the given depth without listing them one by one.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, Iterator, Sequence

from . import generate, hilbert, kripke
from .syntax import (
    BOTTOM, And, Atom, Formula, ImpC, ImpI, Or, neg_c, neg_i, parse, render,
    substitute, is_intuitionistic, is_persistent,
)
from .three_valued import (
    B, F, T, TruthValue, consequence3_counterexample, eval2, eval3, find_countervaluation,
    is_3_valid, is_two_valued_tautology, valuation_to_json, valuations,
)

CONFIRMED = "confirmed"
BOUNDED = "bounded-evidence"
EXHIBIT = "expected-exhibit"
FAILED = "failed"

WITNESS = "(p & (p ->c q)) ->i q"
WEAKENING_C = "~c p ->c (q ->i ~c p)"
WEAKENING_I = "~c p ->i (q ->i ~c p)"

NAMES = ("p", "q")

# Truth tables as printed for the three-valued semantics; rows are the left
# argument, columns the right, both in the order t, b, f.
GOLDEN_BINARY: dict[str, tuple[tuple[TruthValue, ...], ...]] = {
    "&": ((T, B, F), (B, B, F), (F, F, F)),
    "|": ((T, T, T), (T, B, B), (T, B, F)),
    "->c": ((T, B, F), (T, B, B), (T, T, T)),
    "->i": ((T, B, F), (T, B, F), (T, T, T)),
}
GOLDEN_BOTTOM = (F, F, F)
GOLDEN_NEGATIONS = {"~c": (F, B, T), "~i": (F, F, T)}
_TBF = (T, B, F)


@dataclass
class ClaimRecord:
    id: str
    statement: str
    status: str
    witness: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict[str, Any]:
        return {"id": self.id, "statement": self.statement, "status": self.status, "witness": self.witness}


@dataclass
class ReproduceReport:
    seed: int
    claims: list[ClaimRecord]

    @property
    def ok(self) -> bool:
        return all(c.status != FAILED for c in self.claims)

    def to_json(self) -> dict[str, Any]:
        return {"seed": self.seed, "ok": self.ok, "claims": [c.to_json() for c in self.claims]}

    def to_text(self) -> str:
        lines = [f"reproduce (seed {self.seed})"]
        width = max(len(c.id) for c in self.claims) if self.claims else 0
        for c in self.claims:
            lines.append(f"  {c.id:<{width}}  {c.status:<16}  {c.statement}")
            for key, value in c.witness.items():
                lines.append(f"      {key}: {json.dumps(value, sort_keys=True)}")
        lines.append("overall: " + ("OK" if self.ok else "FAILED"))
        return "\n".join(lines)


class _Context:
    def __init__(self, seed: int):
        self.seed = seed
        self.results: dict[str, ClaimRecord] = {}

    def rng(self, claim_id: str) -> random.Random:
        return random.Random(f"{self.seed}:{claim_id}")

    def status(self, claim_id: str) -> str | None:
        rec = self.results.get(claim_id)
        return rec.status if rec else None


# ---------------------------------------------------------------------------
# Sweeps
# ---------------------------------------------------------------------------

_V3 = tuple(valuations(NAMES))
_V2 = tuple(dict(zip(NAMES, bits)) for bits in itertools.product((False, True), repeat=2))


def _profile3(f: Formula) -> tuple[TruthValue, ...]:
    return tuple(eval3(v, f) for v in _V3)


def _models(max_worlds: int) -> Iterator[kripke.KripkeModel]:
    return kripke.enumerate_models(max_worlds, NAMES)


def _persistent_closure(
    names: Sequence[str], max_depth: int, key: Callable[[Formula], Hashable]
) -> Iterator[Formula]:
    """Like generate.semantic_closure, but over the persistent grammar."""
    base = generate.leaves(names)
    every = {key(f): f for f in base}
    pers = dict(every)
    for _ in range(max_depth - 1):
        all_now, pers_now = list(every.values()), list(pers.values())
        every = {key(f): f for f in base}
        pers = dict(every)
        for a in all_now:
            for b in all_now:
                for op in generate.ALL:
                    g = op(a, b)
                    every.setdefault(key(g), g)
                g = ImpI(a, b)
                pers.setdefault(key(g), g)
        for a in pers_now:
            for b in pers_now:
                for op in (And, Or):
                    g = op(a, b)
                    pers.setdefault(key(g), g)
    yield from base
    if max_depth == 0:
        return
    all_now, pers_now = list(every.values()), list(pers.values())
    for a in all_now:
        for b in all_now:
            yield ImpI(a, b)
    for a in pers_now:
        for b in pers_now:
            yield And(a, b)
            yield Or(a, b)


def heredity_sweep(max_worlds: int = 3, max_depth: int = 3) -> dict[str, Any]:
    """Check heredity of every intuitionistic and every persistent formula of
    depth <= ``max_depth`` over p, q on every model with <= ``max_worlds`` worlds."""
    models = checked = 0
    for m in _models(max_worlds):
        models += 1
        key = lambda f, m=m: kripke.extension(m, f)  # noqa: E731
        for family in (
            generate.semantic_closure(NAMES, max_depth, key, generate.INTUITIONISTIC),
            _persistent_closure(NAMES, max_depth, key),
        ):
            for f in family:
                checked += 1
                if not (is_intuitionistic(f) or is_persistent(f)):
                    raise AssertionError(f"sweep produced an unexpected formula {render(f)}")
                pair = kripke.heredity_failure(m, f)
                if pair is not None:
                    return {
                        "ok": False,
                        "formula": render(f),
                        "model": kripke.model_to_json(m),
                        "pair": list(pair),
                    }
    return {"ok": True, "models": models, "formula_checks": checked}


def classical_bridge_sweep(max_depth: int = 3) -> dict[str, Any]:
    """Two-valued tautology vs 3-validity on every classical formula of depth <= max_depth."""
    def key(f: Formula) -> Hashable:
        return _profile3(f), tuple(eval2(a, f) for a in _V2)

    checked = tautologies = 0
    for f in generate.semantic_closure(NAMES, max_depth, key, generate.CLASSICAL):
        checked += 1
        two = is_two_valued_tautology(f)
        three = is_3_valid(f)
        tautologies += two
        if two != three:
            return {"ok": False, "formula": render(f), "two_valued": two, "three_valued": three}
    return {"ok": True, "formulas": checked, "tautologies": tautologies}


def truth_table_mismatches() -> list[str]:
    p, q = Atom("p"), Atom("q")
    ctors = {"&": And, "|": Or, "->c": ImpC, "->i": ImpI}
    bad = []
    for op, rows in GOLDEN_BINARY.items():
        for (x, row) in zip(_TBF, rows):
            for (y, expected) in zip(_TBF, row):
                got = eval3({"p": x, "q": y}, ctors[op](p, q))
                if got is not expected:
                    bad.append(f"{x.symbol} {op} {y.symbol} = {got.symbol}, expected {expected.symbol}")
    for x, expected in zip(_TBF, GOLDEN_BOTTOM):
        got = eval3({"p": x}, BOTTOM)
        if got is not expected:
            bad.append(f"F under p={x.symbol} is {got.symbol}, expected {expected.symbol}")
    for op, col in GOLDEN_NEGATIONS.items():
        neg = neg_c if op == "~c" else neg_i
        for x, expected in zip(_TBF, col):
            got = eval3({"p": x}, neg(p))
            if got is not expected:
                bad.append(f"{op} {x.symbol} = {got.symbol}, expected {expected.symbol}")
    return bad


def substitution_sweep(rng: random.Random, pairs: int = 500, valuations_each: int = 10) -> dict[str, Any]:
    """eval3(v', B) == eval3(v, sigma(B)) where v'(p) = eval3(v, sigma(p))."""
    names = ("p", "q", "r")
    for _ in range(pairs):
        body = generate.random_formula(rng, names, 4)
        sigma = generate.random_substitution(rng, names, names, 3)
        image = substitute(sigma, body)
        for _ in range(valuations_each):
            v = {n: rng.choice(_TBF) for n in names}
            v_prime = {n: eval3(v, sigma[n]) for n in names}
            if eval3(v_prime, body) is not eval3(v, image):
                return {"ok": False, "formula": render(body),
                        "sigma": {k: render(g) for k, g in sigma.items()},
                        "valuation": valuation_to_json(v)}
    return {"ok": True, "pairs": pairs, "valuations_each": valuations_each}


def deduction_bridge_sweep(max_depth: int = 2) -> dict[str, Any]:
    """is_3_valid(A ->i B) == ([A] entails B) for all A, B up to ``max_depth`` (by profile)."""
    reps: dict[Hashable, Formula] = {}
    for f in generate.semantic_closure(NAMES, max_depth, _profile3):
        reps.setdefault(_profile3(f), f)
    forms = list(reps.values())
    for a in forms:
        for b in forms:
            lhs = is_3_valid(ImpI(a, b))
            rhs = consequence3_counterexample([a], b) is None
            if lhs != rhs:
                return {"ok": False, "A": render(a), "B": render(b)}
    return {"ok": True, "distinct_profiles": len(forms), "pairs": len(forms) ** 2}


def totality_sweep(max_depth: int = 3) -> dict[str, Any]:
    checked = 0
    for f in generate.semantic_closure(NAMES, max_depth, _profile3):
        for v in _V3:
            value = eval3(v, f)
            if not value.value:
                return {"ok": False, "formula": render(f), "valuation": valuation_to_json(v)}
        checked += 1
    return {"ok": True, "formulas": checked}


def de_morgan_sweep(max_depth: int = 3) -> dict[str, Any]:
    checked = 0
    for f in generate.semantic_closure(NAMES, max_depth, _profile3):
        checked += 1
        for v in _V3:
            if eval3(v, neg_c(neg_c(f))) is not eval3(v, f):
                return {"ok": False, "formula": render(f), "valuation": valuation_to_json(v)}
    return {"ok": True, "formulas": checked}


def bottom_undefinability_sweep(max_depth: int = 4) -> dict[str, Any]:
    """Every {&, |, ~c}-formula over p, q is b when all atoms are b."""
    all_b = {n: B for n in NAMES}
    checked = 0
    for f in generate.semantic_closure(
        NAMES, max_depth, _profile3, binary=(And, Or), unary=(neg_c,), bottom=False
    ):
        checked += 1
        if eval3(all_b, f) is not B:
            return {"ok": False, "formula": render(f)}
    return {"ok": True, "formulas": checked}


# ---------------------------------------------------------------------------
# Claim legs, in registry order
# ---------------------------------------------------------------------------


def _leg_heredity_failure(ctx: _Context) -> tuple[str, dict]:
    found = kripke.heredity_failure_search(parse("~c p"), 2)
    if found is None:
        return FAILED, {"reason": "no heredity failure of ~c p on models with <= 2 worlds"}
    m, pair = found
    return CONFIRMED, {"formula": "~c p", "model": kripke.model_to_json(m), "pair": list(pair)}


def _leg_weakening(ctx: _Context) -> tuple[str, dict]:
    out = {}
    for text in (WEAKENING_C, WEAKENING_I):
        w = kripke.countermodel_search(parse(text), 2)
        if w is None:
            return FAILED, {"reason": f"no countermodel for {text} with <= 2 worlds"}
        out[text] = {"model": kripke.model_to_json(w.model), "world": w.world}
    return CONFIRMED, out


def _leg_heredity_sweep(ctx: _Context) -> tuple[str, dict]:
    res = heredity_sweep(3, 3)
    return (CONFIRMED if res.pop("ok") else FAILED), res


def _leg_mpi_redundant(ctx: _Context) -> tuple[str, dict]:
    proof = hilbert.example_mpi_via_mpc()
    in_cj = hilbert.check_proof(proof, hilbert.SystemVariant.CJ)
    in_minus = hilbert.check_proof(proof, hilbert.SystemVariant.CJ_MINUS)
    first_mpc = next(i for i, s in enumerate(proof.steps)
                     if isinstance(s, hilbert.RuleStep) and s.name == "MPC")
    # an ordinary MPI proof, rewritten without MPI, must still check in CJ
    mpi_proof = hilbert.Proof(
        (
            hilbert.AxiomStep("ID", parse("p ->i p")),
            hilbert.RuleStep("RCN", (0,), parse("q ->i (p ->i p)")),
            hilbert.AxiomStep("ID", parse("(p ->i p) ->i (p ->i p)")),
            hilbert.RuleStep("MPI", (0, 2), parse("p ->i p")),
        ),
        parse("p ->i p"),
    )
    rewritten = hilbert.eliminate_mpi(mpi_proof)
    rewritten_ok = hilbert.check_proof(rewritten, hilbert.SystemVariant.CJ).accepted
    no_mpi = all(not (isinstance(s, hilbert.RuleStep) and s.name == "MPI") for s in rewritten.steps)
    ok = (in_cj.accepted and not in_minus.accepted and in_minus.step == first_mpc
          and in_minus.code == "rule-not-in-system" and rewritten_ok and no_mpi)
    return (CONFIRMED if ok else FAILED), {
        "claim": render(proof.claim),
        "cj": in_cj.to_json(),
        "cj-minus": in_minus.to_json(),
        "mpi_eliminated_proof_accepted": rewritten_ok and no_mpi,
    }


def _leg_witness_kripke_valid(ctx: _Context) -> tuple[str, dict]:
    f = parse(WITNESS)
    exhaustive = kripke.countermodel_search(f, 4)
    rng = ctx.rng("witness-kripke-valid")
    sampled = kripke.random_countermodel_search(f, rng, 10_000, 8)
    if exhaustive is not None or sampled is not None:
        found = exhaustive or sampled
        return FAILED, {"countermodel": found.to_json()}
    return BOUNDED, {"formula": WITNESS, "exhaustive_max_worlds": 4,
                     "random_models": 10_000, "random_max_worlds": 8}


def _leg_truth_tables(ctx: _Context) -> tuple[str, dict]:
    bad = truth_table_mismatches()
    if bad:
        return FAILED, {"mismatches": bad}
    return CONFIRMED, {"binary_entries": 36, "bottom_entries": 3, "negation_entries": 6}


def _leg_totality(ctx: _Context) -> tuple[str, dict]:
    res = totality_sweep(3)
    return (CONFIRMED if res.pop("ok") else FAILED), res


def _leg_classical_bridge(ctx: _Context) -> tuple[str, dict]:
    res = classical_bridge_sweep(3)
    return (CONFIRMED if res.pop("ok") else FAILED), res


def _leg_mpc_fails(ctx: _Context) -> tuple[str, dict]:
    w = consequence3_counterexample([parse("p"), parse("p ->c q")], parse("q"))
    ok = w == {"p": B, "q": F}
    return (CONFIRMED if ok else FAILED), {"entails": "p, p ->c q => q",
                                           "witness": valuation_to_json(w or {})}


def _leg_substitution(ctx: _Context) -> tuple[str, dict]:
    res = substitution_sweep(ctx.rng("substitution-commutes"))
    return (CONFIRMED if res.pop("ok") else FAILED), res


def _leg_soundness(ctx: _Context) -> tuple[str, dict]:
    report = hilbert.soundness_fuzz(ctx.seed, 1000)
    data = report.to_json()
    data.pop("mpc_exhibit")
    return (CONFIRMED if report.ok else FAILED), data


def _leg_deduction_bridge(ctx: _Context) -> tuple[str, dict]:
    f = parse(WITNESS)
    valid_w = find_countervaluation(f)
    entails_w = consequence3_counterexample([parse("p"), parse("p ->c q")], parse("q"))
    sweep = deduction_bridge_sweep(2)
    ok = valid_w is not None and valid_w == entails_w and sweep.pop("ok")
    return (CONFIRMED if ok else FAILED), {
        "formula": WITNESS,
        "witness": valuation_to_json(valid_w or {}),
        **sweep,
    }


def _leg_mpc_exhibit(ctx: _Context) -> tuple[str, dict]:
    ex = hilbert.mpc_exhibit()
    ok = ex["premises_3_valid"] and not ex["conclusion_3_valid"]
    return (EXHIBIT if ok else FAILED), ex


def _leg_underivable(ctx: _Context) -> tuple[str, dict]:
    needed = ("cj-minus-3-sound", "witness-3-invalid", "mpc-fails-in-lp")
    missing = [c for c in needed if ctx.status(c) != CONFIRMED]
    if missing:
        return FAILED, {"unconfirmed": missing}
    return CONFIRMED, {
        "formula": WITNESS,
        "argument": "theorems of cj-minus are 3-valid; the witness is not 3-valid",
    }


def _leg_incomplete(ctx: _Context) -> tuple[str, dict]:
    if ctx.status("witness-underivable") != CONFIRMED:
        return FAILED, {"unconfirmed": ["witness-underivable"]}
    if ctx.status("witness-kripke-valid") not in (CONFIRMED, BOUNDED):
        return FAILED, {"unconfirmed": ["witness-kripke-valid"]}
    return BOUNDED, {
        "formula": WITNESS,
        "verdict": "Kripke-valid up to 4 worlds (plus 10000 random models up to 8), "
                   "3-invalid, hence underivable in cj-minus by 3-soundness",
    }


def _leg_de_morgan(ctx: _Context) -> tuple[str, dict]:
    res = de_morgan_sweep(3)
    return (CONFIRMED if res.pop("ok") else FAILED), res


def _leg_bottom_undefinable(ctx: _Context) -> tuple[str, dict]:
    res = bottom_undefinability_sweep(4)
    return (CONFIRMED if res.pop("ok") else FAILED), res


REGISTRY: tuple[tuple[str, str, Callable[[_Context], tuple[str, dict]]], ...] = (
    ("classical-negation-not-hereditary", "~c p does not satisfy heredity", _leg_heredity_failure),
    ("weakening-invalid", f"{WEAKENING_C} and {WEAKENING_I} are Kripke-invalid", _leg_weakening),
    ("persistent-hereditary", "intuitionistic and persistent formulas satisfy heredity", _leg_heredity_sweep),
    ("mpi-derivable-from-mpc", "MPI is derivable from CMP and MPC in cj", _leg_mpi_redundant),
    ("witness-kripke-valid", f"{WITNESS} is Kripke-valid", _leg_witness_kripke_valid),
    ("truth-tables", "eval3 matches the printed three-valued truth tables", _leg_truth_tables),
    ("totality", "every formula gets a nonempty truth value", _leg_totality),
    ("classical-tautology-iff-3-valid", "a classical formula is a tautology iff it is 3-valid", _leg_classical_bridge),
    ("substitution-commutes", "3-values commute with uniform substitution", _leg_substitution),
    ("cj-minus-3-sound", "axioms of cj-minus are 3-valid and MPI, RCN preserve 3-validity", _leg_soundness),
    ("mpc-fails-in-lp", "p, p ->c q do not 3-entail q", _leg_mpc_fails),
    ("witness-3-invalid", f"{WITNESS} is 3-valid iff p, p ->c q 3-entail q; it is not", _leg_deduction_bridge),
    ("mpc-breaks-3-validity", "MPC does not preserve 3-validity", _leg_mpc_exhibit),
    ("witness-underivable", f"{WITNESS} is not a theorem of cj-minus", _leg_underivable),
    ("cj-minus-incomplete", "cj-minus is not semantically complete", _leg_incomplete),
    ("de-morgan-negation", "~c ~c A has the value of A", _leg_de_morgan),
    ("bottom-undefinable", "F is not definable from &, |, ~c", _leg_bottom_undefinable),
)

CLAIM_IDS = tuple(cid for cid, _, _ in REGISTRY)

# Legs whose verdict is assembled from other legs.
_DEPENDS = {
    "witness-underivable": ("cj-minus-3-sound", "witness-3-invalid", "mpc-fails-in-lp"),
    "cj-minus-incomplete": ("witness-underivable", "witness-kripke-valid"),
}


def reproduce(seed: int = 0, claims: Iterable[str] | None = None) -> ReproduceReport:
    """Run the registry (or the named subset, plus whatever it depends on)."""
    wanted = set(CLAIM_IDS if claims is None else claims)
    unknown = wanted - set(CLAIM_IDS)
    if unknown:
        raise ValueError(f"unknown claim ids: {sorted(unknown)}")
    needed = set(wanted)
    stack = list(wanted)
    while stack:
        for dep in _DEPENDS.get(stack.pop(), ()):
            if dep not in needed:
                needed.add(dep)
                stack.append(dep)
    ctx = _Context(seed)
    for cid, statement, leg in REGISTRY:
        if cid not in needed:
            continue
        try:
            status, witness = leg(ctx)
        except Exception as exc:  # a crashing leg is a failed claim, not a crashed report
            status, witness = FAILED, {"error": f"{type(exc).__name__}: {exc}"}
        ctx.results[cid] = ClaimRecord(cid, statement, status, witness)
    return ReproduceReport(seed, [ctx.results[c] for c in CLAIM_IDS if c in needed])
