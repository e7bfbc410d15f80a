import itertools
import json

import pytest

from jstit.checker import eval_formula, valid_in_model
from jstit.explorer import (
    Aborted,
    Bounds,
    DEFAULT_BOUNDS,
    ExhaustedUnsat,
    Found,
    FUZZ_BOUNDS,
    enumerate_models,
    find_satisfying,
    nontheorem_witness,
    random_normal_model,
    soundness_fuzz,
    tree_shapes,
)
from jstit.explorer import _act_assignments, _choice_options, _valuation_options
from jstit.model import Model, load_model
from jstit.syntax import Var, parse_formula


class TestTreeShapes:
    def test_counts_match_rooted_tree_sequence(self):
        # rooted unordered trees: 1, 1, 2, 4 for 1..4 nodes
        by_size = {}
        for shape in tree_shapes(4, 3, 3):
            by_size.setdefault(_size(shape), []).append(shape)
        assert {n: len(v) for n, v in by_size.items()} == {1: 1, 2: 1, 3: 2, 4: 4}

    def test_branching_bound(self):
        shapes = list(tree_shapes(4, 1, 3))
        assert all(_max_branching(s) <= 1 for s in shapes)
        assert len(shapes) == 4  # chains only

    def test_depth_bound(self):
        shapes = list(tree_shapes(4, 3, 1))
        assert all(_depth(s) <= 1 for s in shapes)


def _size(shape):
    return 1 + sum(_size(c) for c in shape)


def _depth(shape):
    return 1 + max((_depth(c) for c in shape), default=-1) - 1 if shape else 0


def _max_branching(shape):
    return max(len(shape), max((_max_branching(c) for c in shape), default=0))


class TestEnumeration:
    def test_one_moment_space(self):
        b = Bounds(max_moments=1, max_branching=1, max_depth=1, agents=1,
                   atom_set=("p",), act_term_pool=())
        models = list(enumerate_models(b))
        assert len(models) == 2
        verdicts = {eval_formula(m, "m0", "m0", parse_formula("p"))
                    for m in models}
        assert verdicts == {True, False}

    def test_small_space_all_validate(self):
        b = Bounds(max_moments=3, max_branching=2, max_depth=2, agents=2,
                   atom_set=("p",), act_term_pool=(Var("x"),),
                   r_mode="all_preorders")
        count = 0
        for model in enumerate_models(b):
            assert model.validate().ok, model.validate().violations[0]
            count += 1
        assert count > 100

    def test_deterministic_stream(self):
        b = Bounds(max_moments=3, agents=1, act_term_pool=(Var("x"),),
                   r_mode="minimal")
        first = [m.to_json() for m in enumerate_models(b)]
        second = [m.to_json() for m in enumerate_models(b)]
        assert first == second


def _all_labeled_trees(n):
    nodes = [f"m{i}" for i in range(n)]
    if n == 1:
        yield {"m0": ()}
        return
    for parents in itertools.product(nodes, repeat=n - 1):
        children = {m: [] for m in nodes}
        ok = True
        for child, parent in zip(nodes[1:], parents):
            if parent == child:
                ok = False
                break
            children[parent].append(child)
        if not ok:
            continue
        seen = {"m0"}
        queue = ["m0"]
        while queue:
            for c in children[queue.pop()]:
                seen.add(c)
                queue.append(c)
        if len(seen) == n:
            yield {m: tuple(cs) for m, cs in children.items()}


def _canon(model_dict):
    moments = model_dict["moments"]
    best = None
    for perm in itertools.permutations(moments):
        ren = dict(zip(moments, perm))
        obj = {
            "root": ren[model_dict["root"]],
            "moments": sorted(ren[m] for m in moments),
            "edges": sorted([ren[a], ren[b]] for a, b in model_dict["edges"]),
            "choice": sorted(
                (ren[m], j, sorted(sorted(ren[h] for h in cell) for cell in cells))
                for m, by_agent in model_dict["choice"].items()
                for j, cells in by_agent.items()),
            "act": sorted(
                (ren[m], ren[h], sorted(ts))
                for m, by_leaf in model_dict["act"].items()
                for h, ts in by_leaf.items()),
            "valuation": sorted(
                (a, sorted([ren[m], ren[h]] for m, h in pairs))
                for a, pairs in model_dict["valuation"].items()),
        }
        s = json.dumps(obj, sort_keys=True)
        if best is None or s < best:
            best = s
    return best


class TestIsomorphReduction:
    def test_no_class_dropped_vs_labeled_brute_force(self):
        # enumerate_models uses one canonical labeled tree per shape; the
        # oracle uses every labeled tree; the canonicalized model sets agree
        bounds = Bounds(max_moments=3, max_branching=2, max_depth=2, agents=1,
                        atom_set=("p",), act_term_pool=(Var("x"),),
                        r_mode="minimal")
        ours = {_canon(m.to_dict()) for m in enumerate_models(bounds)}
        brute = set()
        for n in range(1, 4):
            for children in _all_labeled_trees(n):
                skel = Model(("a",), "m0", children)
                for combo in itertools.product(*_choice_options(skel)):
                    choice = {}
                    for entry in combo:
                        choice.update(entry)
                    for act in _act_assignments(skel, bounds.act_term_pool):
                        for valuation in _valuation_options(skel, ("p",)):
                            model = Model(("a",), "m0", children,
                                          choice=choice, act=act,
                                          valuation=valuation)
                            brute.add(_canon(model.to_dict()))
        assert ours == brute


class TestFindSatisfying:
    def test_atom_found_immediately(self):
        out = find_satisfying(parse_formula("p"))
        assert isinstance(out, Found)
        assert len(out.model.moments) == 1

    def test_found_implies_eval_true(self):
        for text in ("p & K ~q", "dia p & dia ~p", "Proven(p)",
                     "x:p & ~c:p", "[a]p & dia ~p"):
            out = find_satisfying(parse_formula(text))
            assert isinstance(out, Found), text
            assert out.model.validate().ok
            assert eval_formula(out.model, out.point.m, out.point.h,
                                parse_formula(text)), text

    def test_projection_agrees_with_full_enumeration(self):
        b = Bounds(max_moments=3)
        for text in ("K(dia p & dia ~p)", "p & ~p", "dia p & box q"):
            fast = find_satisfying(parse_formula(text), b)
            slow = find_satisfying(parse_formula(text), b, project=False)
            assert type(fast) is type(slow), text
            if isinstance(fast, Found):
                assert fast.point == slow.point

    def test_unsat_contradiction(self):
        out = find_satisfying(parse_formula("p & ~p"),
                              Bounds(max_moments=2))
        assert isinstance(out, ExhaustedUnsat)

    def test_budget_abort(self):
        out = find_satisfying(parse_formula("K(dia p & dia ~p)"), budget=10)
        assert isinstance(out, Aborted)
        assert out.stats.models_checked == 10

    def test_no_finite_model_formula_small_bounds(self):
        out = find_satisfying(parse_formula("K(dia p & dia ~p)"),
                              Bounds(max_moments=3))
        assert isinstance(out, ExhaustedUnsat)

    def test_a12_negation_never_satisfied_small_bounds(self):
        out = find_satisfying(parse_formula("K(<K>dia Prove(a,p))"),
                              Bounds(max_moments=3))
        assert isinstance(out, ExhaustedUnsat)

    @pytest.mark.slow
    def test_a12_negation_never_satisfied_default_bounds(self):
        out = find_satisfying(parse_formula("K(<K>dia Prove(a,p))"),
                              DEFAULT_BOUNDS)
        assert isinstance(out, ExhaustedUnsat)

    def test_agent_overflow_rejected(self):
        from jstit.syntax import JstitError
        with pytest.raises(JstitError, match="agents"):
            find_satisfying(parse_formula("[a]p & [b]q & [d]r"),
                            Bounds(agents=2))


class TestRandomModels:
    def test_deterministic(self):
        assert random_normal_model(3).to_json() == random_normal_model(3).to_json()

    def test_always_validates(self):
        for seed in range(200):
            assert random_normal_model(seed).validate().ok

    def test_distribution_covers_tree_kinds(self):
        # regression expectation: both branching and non-branching trees occur
        branching = chain = 0
        for seed in range(1000):
            m = random_normal_model(seed)
            if any(len(cs) > 1 for cs in m.children.values()):
                branching += 1
            else:
                chain += 1
        assert branching > 50 and chain > 50

    def test_relaxed_models_break_constraints(self):
        seen = set()
        for seed in range(60):
            m = random_normal_model(seed, FUZZ_BOUNDS, relax=frozenset({"11"}))
            seen |= {v.constraint for v in m.validate().violations}
        assert "constraint 11" in seen


class TestNontheoremWitness:
    def test_model_is_clean_and_falsifies(self):
        w = nontheorem_witness()
        assert w.validate().ok
        assert not valid_in_model(w, parse_formula("x:p"))

    def test_sensitivity_to_the_evidence_base(self):
        # the same model with p in the evidence of x makes x:p true
        obj = nontheorem_witness().to_dict()
        obj["evidence"] = {"m0": {"x": ["p"]}}
        enriched = load_model(json.dumps(obj))
        assert enriched.validate().ok
        assert eval_formula(enriched, "m0", "m0", parse_formula("x:p"))


class TestSoundnessFuzz:
    def test_spec_seed_clean(self):
        report = soundness_fuzz(42, 100)
        assert report.ok
        assert report.iterations == 100

    def test_deterministic_report(self):
        a = soundness_fuzz(7, 30).to_dict()
        b = soundness_fuzz(7, 30).to_dict()
        del a["elapsed_seconds"], b["elapsed_seconds"]
        assert a == b

    def test_zero_iterations(self):
        report = soundness_fuzz(0, 0)
        assert report.ok and report.iterations == 0

    def test_relax_hook_produces_counterexample(self):
        # frozen calibration: transparency violations break the
        # knowledge-transfer scheme for Proven
        report = soundness_fuzz(2, 300, FUZZ_BOUNDS, relax=frozenset({"11"}))
        assert not report.ok
        cex = report.counterexamples[0]
        assert not valid_in_model(cex.model, cex.formula, check=False)
        assert not cex.model.validate().ok
