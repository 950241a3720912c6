import itertools
import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from cjlogic import config
from cjlogic.generate import INTUITIONISTIC, formulas_up_to_depth
from cjlogic.kripke import (
    InvalidModelError, KripkeModel, KripkeWitness, consequence_in_model, countermodel_search,
    enumerate_models, extension, heredity_failure, heredity_failure_search, heredity_holds,
    load_model, model_from_json, model_to_json, preorders, random_countermodel_search,
    random_model, satisfies, upsets, valid_in_model, validate_model,
)
from cjlogic.syntax import ImpC, atoms, is_persistent, neg_c, neg_i, parse

from conftest import formulas


def refl(n, *extra):
    return frozenset({(w, w) for w in range(n)} | set(extra))


# two-world chain 0 -> 1, p true only at 1
CHAIN = KripkeModel(2, refl(2, (0, 1)), {"p": {1}})


# Independent oracle: all relations on n worlds, filtered by definition.
def brute_force_models(n, names):
    pairs = [(a, b) for a in range(n) for b in range(n)]
    for bits in range(1 << len(pairs)):
        rel = {pairs[i] for i in range(len(pairs)) if bits >> i & 1}
        if any((w, w) not in rel for w in range(n)):
            continue
        if any((a, c) not in rel for (a, b) in rel for (b2, c) in rel if b == b2):
            continue
        subsets = [set(s) for k in range(n + 1) for s in itertools.combinations(range(n), k)]
        hereditary = [s for s in subsets if all(b in s for (a, b) in rel if a in s)]
        for combo in itertools.product(hereditary, repeat=len(names)):
            yield KripkeModel(n, frozenset(rel), dict(zip(names, combo)))


def model_strategy(max_worlds=4, names=("p", "q", "r")):
    return st.builds(
        lambda seed, n: random_model(random.Random(seed), n, names),
        st.integers(0, 2**32), st.integers(1, max_worlds),
    )


class TestValidateModel:
    def test_ok(self):
        assert validate_model(KripkeModel(1, {(0, 0)}, {"p": {0}})) == []

    def test_heredity_violation(self):
        m = KripkeModel(2, refl(2, (0, 1)), {"p": {0}})
        (v,) = validate_model(m)
        assert v.kind == "heredity" and v.detail == ("p", (0, 1))

    def test_transitivity_violation(self):
        m = KripkeModel(3, refl(3, (0, 1), (1, 2)))
        (v,) = validate_model(m)
        assert v.kind == "transitivity" and v.detail == ((0, 1), (1, 2))
        assert "(0,2) missing" in str(v)

    def test_reflexivity_violation(self):
        m = KripkeModel(2, {(0, 0)})
        (v,) = validate_model(m)
        assert v.kind == "reflexivity" and v.detail == (1,)

    def test_reports_every_violation(self):
        m = KripkeModel(3, {(0, 1), (1, 2), (0, 0)}, {"p": {0}})
        kinds = sorted(v.kind for v in validate_model(m))
        assert kinds == ["heredity", "reflexivity", "reflexivity", "transitivity"]

    def test_empty_and_out_of_range(self):
        assert validate_model(KripkeModel(0, set()))[0].kind == "worlds"
        assert validate_model(KripkeModel(1, {(0, 0), (0, 3)}))[0].kind == "range"
        assert validate_model(KripkeModel(1, {(0, 0)}, {"p": {2}}))[0].kind == "range"

    def test_invalid_model_is_a_usage_error(self):
        with pytest.raises(InvalidModelError):
            satisfies(KripkeModel(2, {(0, 0)}), 0, parse("p"))
        with pytest.raises(ValueError):
            satisfies(CHAIN, 5, parse("p"))


class TestSatisfies:
    def test_single_world(self):
        m = KripkeModel(1, {(0, 0)}, {"p": {0}})
        assert satisfies(m, 0, parse("p ->c p"))

    def test_classical_negation_not_hereditary(self):
        assert satisfies(CHAIN, 0, parse("~c p"))
        assert not satisfies(CHAIN, 1, parse("~c p"))

    def test_weakening_countermodel(self):
        m = CHAIN.with_val({"p": {1}, "q": {0, 1}})
        assert not satisfies(m, 0, parse("~c p ->c (q ->i ~c p)"))

    def test_bottom_never(self):
        assert not satisfies(CHAIN, 0, parse("F"))
        assert satisfies(CHAIN, 1, parse("T"))

    @given(model_strategy(), formulas())
    def test_extension_agrees_with_satisfies(self, m, f):
        ext = extension(m, f)
        for w in range(m.worlds):
            assert satisfies(m, w, f) == bool(ext >> w & 1)

    @given(model_strategy(), formulas(max_leaves=6), formulas(max_leaves=6))
    def test_classical_arrow_is_local(self, m, a, b):
        for w in range(m.worlds):
            assert satisfies(m, w, ImpC(a, b)) == (not satisfies(m, w, a) or satisfies(m, w, b))

    @given(model_strategy(), formulas(max_leaves=8))
    def test_derived_negation_clauses(self, m, a):
        for w in range(m.worlds):
            assert satisfies(m, w, neg_c(a)) == (not satisfies(m, w, a))
            assert satisfies(m, w, neg_i(a)) == all(
                not satisfies(m, v, a) for v in m.successors(w)
            )


class TestHeredity:
    def test_classical_negation_fails(self):
        assert heredity_failure(CHAIN, parse("~c p")) == (0, 1)
        assert not heredity_holds(CHAIN, parse("~c p"))

    @given(model_strategy(), formulas(connectives=INTUITIONISTIC))
    def test_intuitionistic_formulas_hereditary(self, m, f):
        assert heredity_holds(m, f)

    @given(model_strategy(), formulas())
    def test_persistent_formulas_hereditary(self, m, f):
        if is_persistent(f):
            assert heredity_holds(m, f)

    def test_intuitionistic_depth_two_literally(self):
        fs = formulas_up_to_depth(("p", "q"), 2, INTUITIONISTIC)
        for m in enumerate_models(2, ("p", "q")):
            for f in fs:
                assert heredity_holds(m, f), (model_to_json(m), str(f))

    def test_search_finds_the_two_world_witness(self):
        m, pair = heredity_failure_search(parse("~c p"), 2)
        assert m.worlds == 2 and pair == (0, 1)
        assert model_to_json(m) == model_to_json(CHAIN)


class TestValidityAndConsequence:
    @given(model_strategy())
    def test_identity_valid(self, m):
        assert valid_in_model(m, parse("p ->i p"))

    @given(model_strategy())
    def test_witness_formula_valid(self, m):
        assert valid_in_model(m, parse("(p & (p ->c q)) ->i q"))

    def test_weakening_invalid_in_model(self):
        m = CHAIN.with_val({"p": {1}, "q": {0, 1}})
        assert not valid_in_model(m, parse("~c p ->c (q ->i ~c p)"))

    @given(model_strategy())
    def test_consequence(self, m):
        assert consequence_in_model(m, [], parse("p ->i p"))
        assert consequence_in_model(m, [parse("p"), parse("p ->c q")], parse("q"))

    def test_consequence_fails(self):
        m = CHAIN.with_val({"p": {1}, "q": set()})
        assert not consequence_in_model(m, [parse("p")], parse("q"))


class TestEnumeration:
    def test_preorder_counts(self):
        # labelled preorders: 1, 4, 29, 355
        assert [sum(1 for _ in preorders(n)) for n in (1, 2, 3, 4)] == [1, 4, 29, 355]

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_matches_brute_force(self, n):
        names = ("p", "q")
        ours = {json.dumps(model_to_json(m), sort_keys=True)
                for m in enumerate_models(n, names) if m.worlds == n}
        oracle = {json.dumps(model_to_json(m), sort_keys=True) for m in brute_force_models(n, names)}
        assert ours == oracle

    def test_every_enumerated_model_is_valid(self):
        for m in enumerate_models(3, ("p",)):
            assert validate_model(m) == []

    def test_upsets_chain(self):
        assert upsets(2, refl(2, (0, 1))) == [frozenset(), frozenset({1}), frozenset({0, 1})]

    def test_deterministic(self):
        a = [model_to_json(m) for m in enumerate_models(3, ("p",))]
        b = [model_to_json(m) for m in enumerate_models(3, ("p",))]
        assert a == b


class TestCountermodelSearch:
    def test_weakening_variant_found(self):
        w = countermodel_search(parse("~c p ->i (q ->i ~c p)"), 2)
        assert isinstance(w, KripkeWitness)
        assert not satisfies(w.model, w.world, w.formula)

    def test_witness_formula_none(self):
        assert countermodel_search(parse("(p & (p ->c q)) ->i q"), 4) is None

    def test_identity_none(self):
        assert countermodel_search(parse("p ->i p"), 3) is None

    @pytest.mark.parametrize("text", ["p ->i q", "~c ~i p ->c p", "p | ~i p", "(~c p ->c q) ->i q"])
    def test_agrees_with_brute_force(self, text):
        f = parse(text)
        found = countermodel_search(f, 3)
        oracle = next(
            ((m, w) for n in (1, 2, 3) for m in brute_force_models(n, atoms(f))
             for w in range(m.worlds) if not satisfies(m, w, f)),
            None,
        )
        assert (found is None) == (oracle is None)
        if found is not None:
            assert found.model.worlds == oracle[0].worlds

    def test_exhaustive_none_means_valid_everywhere(self):
        f = parse("(p & (p ->c q)) ->i q")
        assert countermodel_search(f, 3) is None
        for m in enumerate_models(3, ("p", "q")):
            assert valid_in_model(m, f)

    def test_budget_guard(self, monkeypatch):
        with pytest.raises(config.BudgetExceeded):
            countermodel_search(parse("p"), 5)
        with pytest.raises(config.BudgetExceeded):
            countermodel_search(parse("p & q & r & s"), 2)
        monkeypatch.setenv(config.MAX_WORLDS_ENV, "1")
        with pytest.raises(config.BudgetExceeded):
            countermodel_search(parse("p"), 2)

    def test_random_search(self):
        rng = random.Random(1)
        assert random_countermodel_search(parse("(p & (p ->c q)) ->i q"), rng, 500, 8) is None
        w = random_countermodel_search(parse("~c p ->i (q ->i ~c p)"), rng, 500, 8)
        assert w is not None and not satisfies(w.model, w.world, w.formula)

    @given(st.integers(0, 2**32), st.integers(1, 8))
    @settings(max_examples=50)
    def test_random_models_are_valid(self, seed, n):
        assert validate_model(random_model(random.Random(seed), n, ("p", "q"))) == []


class TestJson:
    def test_round_trip(self):
        data = {"worlds": 2, "rel": [[0, 0], [0, 1], [1, 1]], "val": {"p": [1]}}
        m = model_from_json(data)
        assert m == CHAIN
        assert model_to_json(m) == data

    def test_rejects_invalid_with_violations(self):
        data = {"worlds": 2, "rel": [[0, 0], [0, 1], [1, 1]], "val": {"p": [0]}}
        with pytest.raises(InvalidModelError) as exc:
            model_from_json(data)
        assert exc.value.violations[0].kind == "heredity"

    @pytest.mark.parametrize("data", [{}, {"worlds": "2", "rel": []}, {"worlds": 1, "rel": [[0]]}])
    def test_malformed(self, data):
        with pytest.raises(ValueError):
            model_from_json(data)

    def test_load(self, tmp_path):
        path = tmp_path / "m.json"
        path.write_text(json.dumps(model_to_json(CHAIN)))
        assert load_model(str(path)) == CHAIN
