"""Acceptance criteria, one test each, with their time limits.

Every test records a line in ``conftest.ACCEPTANCE_RESULTS``; the terminal
summary prints them in order.
"""

import json
import pathlib
import random
import subprocess
import sys
import time


import conftest
from cjlogic import harness, kripke
from cjlogic.cli import main
from cjlogic.generate import CLASSICAL, formulas_up_to_depth
from cjlogic.hilbert import (
    AXIOMS, RuleStep, SystemVariant, check_proof, example_mpi_via_mpc, load_proof,
    proof_from_json, soundness_fuzz,
)
from cjlogic.syntax import BOTTOM, And, Atom, ImpC, ImpI, Or, neg_c, neg_i, parse
from cjlogic.three_valued import B, F, T, eval3, is_3_valid, is_two_valued_tautology

HERE = pathlib.Path(__file__).parent
WITNESS = "(p & (p ->c q)) ->i q"


def check(name, limit, fn):
    """Run ``fn`` (returns (ok, detail)), record the outcome, then assert."""
    start = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    elapsed = time.perf_counter() - start
    in_time = elapsed < limit
    conftest.ACCEPTANCE_RESULTS.append(
        (name, ok and in_time, f"{elapsed:.2f}s (limit {limit}s) {detail}")
    )
    assert ok, detail
    assert in_time, f"took {elapsed:.2f}s, limit {limit}s"


def run_cli(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out.strip()


# Printed tables, rows and columns ordered t, b, f.
BINARY_TABLES = {
    And: ("tbf", "bbf", "fff"),
    Or: ("ttt", "tbb", "tbf"),
    ImpC: ("tbf", "tbb", "ttt"),
    ImpI: ("tbf", "tbf", "ttt"),
}
NEGATION_TABLES = {neg_c: "fbt", neg_i: "fft"}
SYM = {"t": T, "b": B, "f": F}


def test_ac1_truth_tables():
    def run():
        p, q = Atom("p"), Atom("q")
        cells = bad = 0
        for op, rows in BINARY_TABLES.items():
            for x, row in zip("tbf", rows):
                for y, want in zip("tbf", row):
                    cells += 1
                    bad += eval3({"p": SYM[x], "q": SYM[y]}, op(p, q)) is not SYM[want]
        for x in "tbf":
            cells += 1
            bad += eval3({"p": SYM[x]}, BOTTOM) is not F
        neg_cells = 0
        for neg, col in NEGATION_TABLES.items():
            for x, want in zip("tbf", col):
                neg_cells += 1
                bad += eval3({"p": SYM[x]}, neg(p)) is not SYM[want]
        return bad == 0, f"{cells} connective cells + {neg_cells} negation cells, {bad} mismatches"
    check("AC1 truth-table fidelity", 1, run)


def test_ac2_classical_modus_ponens_fails(capsys):
    def run():
        code, out = run_cli(capsys, "three", "entails", "p", "p ->c q", "--", "q")
        return code == 1 and json.loads(out) == {"p": "b", "q": "f"}, f"exit {code}, witness {out}"
    check("AC2 p, p ->c q do not entail q", 1, run)


def test_ac3_witness_not_3_valid(capsys):
    def run():
        code, out = run_cli(capsys, "three", "valid", WITNESS)
        return code == 1 and json.loads(out) == {"p": "b", "q": "f"}, f"exit {code}, witness {out}"
    check("AC3 witness formula 3-invalid", 1, run)


def test_ac4_witness_kripke_valid_bounded():
    def run():
        f = parse(WITNESS)
        exhaustive = kripke.countermodel_search(f, 4)
        models = sum(1 for _ in kripke.enumerate_models(4, ("p", "q")))
        sampled = kripke.random_countermodel_search(f, random.Random(0), 10_000, 8)
        ok = exhaustive is None and sampled is None
        return ok, f"{models} models <= 4 worlds and 10000 random <= 8 worlds, no countermodel"
    check("AC4 witness Kripke-valid (bounded)", 120, run)


def test_ac5_tautology_iff_3_valid():
    def run():
        res = harness.classical_bridge_sweep(3)
        # literal cross-check on every depth <= 2 formula, no deduplication
        literal = formulas_up_to_depth(("p", "q"), 2, CLASSICAL)
        bad = sum(is_two_valued_tautology(f) != is_3_valid(f) for f in literal)
        ok = res["ok"] and bad == 0
        return ok, f"{res.get('formulas')} depth-3 classes, {len(literal)} literal depth-2, {bad} mismatches"
    check("AC5 classical tautology iff 3-valid", 120, run)


def test_ac6_soundness_fuzz():
    def run():
        r = soundness_fuzz(0, 1000)
        again = soundness_fuzz(0, 1000)
        counts_ok = all(r.axiom_counts[a] == 1000 for a in AXIOMS) and r.axiom_counts["PER-unrestricted"] == 1000
        rules_ok = r.rule_counts["MPI"] == 1000 and r.rule_counts["RCN"] == 1000
        same = r.to_json() == again.to_json()
        ok = r.ok and counts_ok and rules_ok and same
        return ok, f"{sum(r.axiom_counts.values())} axiom instances, {len(r.failures)} failures, deterministic={same}"
    # the limit covers both runs
    check("AC6 cj-minus 3-soundness fuzz", 120, run)


def test_ac7_substitution():
    def run():
        res = harness.substitution_sweep(random.Random(0), 500, 10)
        return res["ok"], "500 pairs x 10 valuations"
    check("AC7 substitution commutes with eval3", 60, run)


def test_ac8_heredity():
    def run():
        sweep = harness.heredity_sweep(3, 3)
        m, pair = kripke.heredity_failure_search(parse("~c p"), 2)
        weak = [kripke.countermodel_search(parse(s), 2)
                for s in ("~c p ->c (q ->i ~c p)", "~c p ->i (q ->i ~c p)")]
        ok = sweep["ok"] and m.worlds == 2 and all(w is not None and w.model.worlds <= 2 for w in weak)
        return ok, f"{sweep.get('models')} models, {sweep.get('formula_checks')} checks; ~c p fails on {pair}"
    check("AC8 heredity suite", 300, run)


def test_ac9_proof_checker():
    corpus = json.loads((HERE / "data" / "corpus.json").read_text())
    stored = pathlib.Path(harness.__file__).parent / "proofs" / "mpi_via_mpc.json"

    def run():
        p = load_proof(str(stored))
        first_mpc = next(i for i, s in enumerate(p.steps) if isinstance(s, RuleStep) and s.name == "MPC")
        in_cj = check_proof(p, SystemVariant.CJ)
        in_minus = check_proof(p, SystemVariant.CJ_MINUS)
        stored_ok = in_cj.accepted and not in_minus.accepted and in_minus.step == first_mpc
        wrong = []
        for case in corpus:
            v = check_proof(proof_from_json(case["proof"]), SystemVariant(case["system"])).to_json()
            v.pop("reason", None)
            if v != case["expected"]:
                wrong.append(case["name"])
        ok = stored_ok and not wrong and len(corpus) == 20 and p == example_mpi_via_mpc()
        return ok, f"stored proof rejected at step {in_minus.step}; corpus {20 - len(wrong)}/20"
    check("AC9 proof checker", 1, run)


def test_ac10_de_morgan_and_bottom():
    def run():
        dm = harness.de_morgan_sweep(3)
        bu = harness.bottom_undefinability_sweep(4)
        # the closures are compositional; spot-check a literal sample as well
        literal = formulas_up_to_depth(("p", "q"), 2, (And, Or, ImpI, ImpC))
        sample_ok = all(
            eval3(v, neg_c(neg_c(f))) is eval3(v, f)
            for f in literal[::17]
            for v in ({"p": x, "q": y} for x in (T, B, F) for y in (T, B, F))
        )
        ok = dm["ok"] and bu["ok"] and sample_ok
        return ok, f"De Morgan on {dm.get('formulas')} classes, bottom-free on {bu.get('formulas')} classes"
    check("AC10 De Morgan and bottom undefinability", 60, run)


def test_ac11_reproduce_deterministic():
    def run():
        cmd = [sys.executable, "-m", "cjlogic", "reproduce", "--json"]
        a = subprocess.run(cmd, capture_output=True)
        b = subprocess.run(cmd, capture_output=True)
        report = json.loads(a.stdout)
        statuses = {c["id"]: c["status"] for c in report["claims"]}
        allowed = {harness.CONFIRMED, harness.BOUNDED, harness.EXHIBIT}
        ok = (
            a.returncode == b.returncode == 0
            and a.stdout == b.stdout
            and list(statuses) == list(harness.CLAIM_IDS)
            and set(statuses.values()) <= allowed
        )
        counts = {s: list(statuses.values()).count(s) for s in sorted(set(statuses.values()))}
        return ok, f"{len(statuses)} claims {counts}, byte-identical={a.stdout == b.stdout}"
    check("AC11 reproduce complete and byte-identical", 600, run)
