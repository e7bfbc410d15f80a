import random

import pytest
from hypothesis import given, settings, strategies as st

from jstit.explorer import random_scheme_instance
from jstit.schemes import (
    A0_GROUP,
    NORMALITY_GROUP,
    SchemeId,
    instantiate,
    is_normality_instance,
    match_axiom,
    match_scheme,
)
from jstit.syntax import Atom, parse_formula

AGENTS = frozenset({"a", "b"})


def match(text):
    return match_axiom(parse_formula(text), AGENTS)


class TestMatchExamples:
    def test_a2(self):
        res = match("box p -> [a]p")
        assert res.scheme is SchemeId.A2
        assert res.bindings["A"] == Atom("p")
        assert res.bindings["j"] == "a"

    def test_a5(self):
        assert match("x:p -> (!x:(x:p) & K p)").scheme is SchemeId.A5

    def test_no_template_for_identity(self):
        assert match("p -> p") is None

    def test_a9(self):
        res = match("Prove(a,p) -> (~Proven(p) & [a]Prove(a,p) & K p)")
        assert res.scheme is SchemeId.A9

    def test_a4_repaired_shape(self):
        assert match("x:(p -> q) -> (y:p -> (x*y):q)").scheme is SchemeId.A4

    def test_a6(self):
        assert match("(x:p | y:p) -> (x+y):p").scheme is SchemeId.A6

    def test_a3_distinct_agents_only(self):
        ok = "(dia [a]p & dia [b]q) -> dia([a]p & [b]q)"
        bad = "(dia [a]p & dia [a]q) -> dia([a]p & [a]q)"
        assert match(ok).scheme is SchemeId.A3
        assert match(bad) is None

    def test_a3_unary(self):
        assert match("dia [a]p -> dia [a]p").scheme is SchemeId.A3

    def test_a12_arities(self):
        assert match("~K(<K>dia Prove(a,p))").bindings["n"] == 1
        res = match("~K(<K>dia Prove(a,p) | <K>dia Prove(b,q))")
        assert res.scheme is SchemeId.A12 and res.bindings["n"] == 2

    def test_a13_requires_full_agent_set(self):
        two = parse_formula("~Prove(a,p) -> <a>(~Prove(a,p) & ~Prove(b,p))")
        assert match_axiom(two, AGENTS).scheme is SchemeId.A13
        assert match_axiom(two, frozenset({"a"})) is None
        one = parse_formula("~Prove(a,p) -> <a>(~Prove(a,p))")
        assert match_axiom(one, frozenset({"a"})).scheme is SchemeId.A13
        assert match_axiom(one, AGENTS) is None

    def test_a10_any_agent_pair(self):
        assert match("box Prove(a,p) -> box Prove(b,p)").scheme is SchemeId.A10
        assert match("box Prove(a,p) -> box Prove(a,p)").scheme is SchemeId.A10

    def test_unknown_agent_rejected(self):
        assert match("box p -> [zz]p") is None

    def test_metavariable_consistency(self):
        assert match("box p -> [a]q") is None
        assert match("K p -> K K q") is None


class TestNormality:
    def test_a2_counts(self):
        assert is_normality_instance(parse_formula("box p -> [a]p"))

    def test_a0_does_not_count(self):
        assert not is_normality_instance(parse_formula("p -> (q -> p)"))

    def test_atom_does_not_count(self):
        assert not is_normality_instance(Atom("p"))

    def test_groups_partition_the_enumeration(self):
        assert set(A0_GROUP) | set(NORMALITY_GROUP) == set(SchemeId)
        assert not set(A0_GROUP) & set(NORMALITY_GROUP)


class TestRoundTrip:
    @pytest.mark.parametrize("text", [
        "p -> (q -> p)",
        "(p -> (q -> r)) -> ((p -> q) -> (p -> r))",
        "(~q -> ~p) -> (p -> q)",
        "p & q -> p",
        "p & q -> q",
        "p -> (q -> (p & q))",
        "box(p -> q) -> (box p -> box q)",
        "box p -> p",
        "dia p -> box dia p",
        "[a](p -> q) -> ([a]p -> [a]q)",
        "[a]p -> p",
        "<a>p -> [a]<a>p",
        "box p -> [b]p",
        "(dia [a]p & dia [b]q) -> dia([a]p & [b]q)",
        "x:(p -> q) -> (y:p -> (x*y):q)",
        "x:p -> (!x:(x:p) & K p)",
        "(x:p | y:p) -> (x+y):p",
        "K(p -> q) -> (K p -> K q)",
        "K p -> p",
        "K p -> K K p",
        "K p -> box K box p",
        "Prove(a,p) -> (~Proven(p) & [a]Prove(a,p) & K p)",
        "box Prove(a,p) -> box Prove(b,p)",
        "Proven(p) -> (K Proven(p) & K p)",
        "~K(<K>dia Prove(a,p) | <K>dia Prove(b,q))",
        "~Prove(b,p) -> <b>(~Prove(a,p) & ~Prove(b,p))",
    ])
    def test_substitution_reproduces_input(self, text):
        f = parse_formula(text)
        res = match_axiom(f, AGENTS)
        assert res is not None
        assert instantiate(res.scheme, res.bindings, AGENTS) == f

    def test_deterministic(self):
        f = parse_formula("box p -> [a]p")
        results = {match_axiom(f, AGENTS).scheme for _ in range(10)}
        assert results == {SchemeId.A2}


@given(st.sampled_from(list(SchemeId)), st.integers(0, 2 ** 32 - 1))
@settings(max_examples=200, deadline=None)
def test_random_instances_match_their_scheme(scheme, seed):
    rng = random.Random(seed)
    inst = random_scheme_instance(rng, scheme, ("a", "b"), ("p", "q"))
    res = match_scheme(inst, scheme, AGENTS)
    assert res is not None
    assert instantiate(scheme, res.bindings, AGENTS) == inst
