import json
import random

import pytest

from jstit.checker import (
    EvalPoint,
    EvaluationError,
    eval_formula,
    eval_md,
    eval_prove_direct,
    is_md_form,
    satisfying_points,
    valid_in_model,
)
from jstit.explorer import (
    FUZZ_BOUNDS,
    random_formula,
    random_md_formula,
    random_normal_model,
)
from jstit.model import load_model
from jstit.syntax import Atom, Prove, parse_formula

from conftest import corpus_path


def small_model(**overrides):
    obj = {
        "agents": ["a"],
        "moments": ["m0", "m1", "m2"],
        "root": "m0",
        "edges": [["m0", "m1"], ["m0", "m2"]],
        "valuation": {"p": [["m0", "m1"], ["m1", "m1"]]},
    }
    obj.update(overrides)
    return load_model(json.dumps(obj))


class TestBasicClauses:
    def test_atom_and_box_on_single_moment(self):
        m = load_model(json.dumps({
            "agents": ["a"], "moments": ["m0"], "root": "m0", "edges": [],
            "valuation": {"p": [["m0", "m0"]]}}))
        assert eval_formula(m, "m0", "m0", parse_formula("p"))
        assert eval_formula(m, "m0", "m0", parse_formula("box p"))

    def test_dia_both_ways(self):
        m = small_model()
        assert eval_formula(m, "m0", "m1", parse_formula("dia p & dia ~p"))
        assert eval_formula(m, "m0", "m2", parse_formula("dia p & dia ~p"))

    def test_cstit_quantifies_over_cell(self):
        m = small_model(choice={"m0": {"a": [["m1"], ["m2"]]}})
        assert eval_formula(m, "m0", "m1", parse_formula("[a]p"))
        assert not eval_formula(m, "m0", "m2", parse_formula("[a]p"))
        vac = small_model()
        assert not eval_formula(vac, "m0", "m1", parse_formula("[a]p"))

    def test_know_follows_r(self):
        # p holds at (m0,m1) and (m1,m1) but not at m2, so K p fails at m0
        m = small_model()
        assert not eval_formula(m, "m0", "m1", parse_formula("K p"))
        assert eval_formula(m, "m1", "m1", parse_formula("K p"))

    def test_know_reflexivity_effect(self):
        m = small_model()
        f = parse_formula("K p -> p")
        assert valid_in_model(m, f)

    def test_unknown_agent(self):
        m = small_model()
        with pytest.raises(EvaluationError, match="unknown agent"):
            eval_formula(m, "m0", "m1", parse_formula("[zz]p"))

    def test_invalid_model_rejected(self):
        bad = load_model(corpus_path("models", "violates7.json").read_text())
        with pytest.raises(EvaluationError, match="validation"):
            eval_formula(bad, "m0", "m1", parse_formula("p"))

    def test_unknown_point(self):
        m = small_model()
        with pytest.raises(EvaluationError, match="unknown moment"):
            eval_formula(m, "zz", "m1", parse_formula("p"))
        with pytest.raises(EvaluationError, match="does not pass"):
            eval_formula(m, "m1", "m2", parse_formula("p"))


class TestWitnessModelVerdicts:
    """Hand-derived truth values on the shipped three-moment model."""

    def test_prove_true_on_the_presenting_history(self, witness_model):
        assert eval_formula(witness_model, "m0", "m1", parse_formula("Prove(a,p)"))

    def test_prove_false_on_the_bare_history(self, witness_model):
        assert not eval_formula(witness_model, "m0", "m2",
                                parse_formula("Prove(a,p)"))

    def test_proven_false_at_root_true_after(self, witness_model):
        assert not eval_md(witness_model, "m0", parse_formula("Proven(p)"))
        assert eval_md(witness_model, "m1", parse_formula("Proven(p)"))

    def test_satisfying_points(self, witness_model):
        pts = satisfying_points(witness_model, parse_formula("Prove(a,p)"))
        assert pts == {EvalPoint("m0", "m1")}

    def test_a9_decomposition(self, witness_model):
        # wherever Prove(a,p) holds, the three conjuncts of its axiom hold
        for part in ("~Proven(p)", "[a]Prove(a,p)", "K p"):
            assert eval_formula(witness_model, "m0", "m1", parse_formula(part))

    def test_direct_oracle_agrees_here(self, witness_model):
        for m in witness_model.moments:
            for h in witness_model.h_at[m]:
                via_eval = eval_formula(witness_model, m, h,
                                        parse_formula("Prove(a,p)"))
                via_direct = eval_prove_direct(witness_model, m, h, "a",
                                               Atom("p"))
                assert via_eval == via_direct

    def test_empty_act_negative_condition_vacuous(self):
        m = small_model()
        # positive fails (no proofs presented) but the negative condition
        # holds vacuously; the oracle must agree
        assert not eval_prove_direct(m, "m0", "m1", "a", Atom("p"))
        assert not eval_formula(m, "m0", "m1", parse_formula("Prove(a,p)"))


class TestMomentDeterminacy:
    def test_md_grammar(self):
        assert is_md_form(parse_formula("K p & ~Proven(q)"))
        assert is_md_form(parse_formula("box p"))
        assert is_md_form(parse_formula("x:p"))
        assert not is_md_form(parse_formula("[a]p"))
        assert not is_md_form(parse_formula("p"))
        assert not is_md_form(parse_formula("Prove(a,p)"))

    def test_eval_md_requires_md(self):
        with pytest.raises(EvaluationError, match="moment-determinate"):
            eval_md(small_model(), "m0", parse_formula("p"))

    def test_box_md_example(self):
        m = small_model()
        assert not eval_md(m, "m0", parse_formula("box p"))

    def test_history_invariance_fuzzed(self):
        rng = random.Random("md-fuzz")
        for _ in range(40):
            model = random_normal_model(rng.randrange(2 ** 32), FUZZ_BOUNDS)
            for _ in range(10):
                f = random_md_formula(rng, model.agents, ("p",))
                ext = model.extended(formulas=[f])
                for m in ext.moments:
                    verdicts = {eval_formula(ext, m, h, f, check=False)
                                for h in ext.h_at[m]}
                    assert len(verdicts) == 1, (f, m)


class TestRegressionProperties:
    def test_duality_by_desugaring(self):
        m = small_model()
        dia_p = parse_formula("dia p")
        box_not = parse_formula("box ~p")
        for mm in m.moments:
            for h in m.h_at[mm]:
                assert eval_formula(m, mm, h, dia_p) != eval_formula(
                    m, mm, h, box_not)

    def test_prove_oracle_fuzzed(self):
        rng = random.Random("prove-oracle")
        for _ in range(40):
            model = random_normal_model(rng.randrange(2 ** 32), FUZZ_BOUNDS)
            for _ in range(6):
                body = random_formula(rng, model.agents, ("p",), depth=1)
                agent = rng.choice(model.agents)
                f = Prove(agent, body)
                ext = model.extended(formulas=[f])
                for m in ext.moments:
                    for h in ext.h_at[m]:
                        assert eval_formula(ext, m, h, f, check=False) == \
                            eval_prove_direct(ext, m, h, agent, body,
                                              check=False)

    def test_cache_does_not_change_results(self, witness_model):
        from jstit.checker import Evaluator
        f = parse_formula("K(Proven(p) | ~x:p) & dia Prove(a,p)")
        shared = Evaluator(witness_model, f)
        for m in witness_model.moments:
            for h in witness_model.h_at[m]:
                fresh = Evaluator(witness_model, f)
                assert shared.at(m, h, f) == fresh.at(m, h, f)
