"""Axiom-scheme instance matching.

The basis consists of a fixed six-scheme presentation of classical
propositional logic (the A0 group), an S5 presentation (K, T, 5) for the
historical-necessity and each agentive modality, an S4 presentation
(K, T, 4) for the knowledge modality, and the justification / proving
schemes A2 through A13.  All templates are stated over the primitive
constructors; sugar is resolved before matching ever happens.

Trial order for ``match_axiom`` is the declaration order of ``SchemeId``:

    A0.P1, A0.P2, A0.P3, A0.C1, A0.C2, A0.C3,
    A1.Box.K, A1.Box.T, A1.Box.5, A1.Cstit.K, A1.Cstit.T, A1.Cstit.5,
    A2, A3, A4, A5, A6, A7.K, A7.T, A7.4, A8, A9, A10, A11, A12, A13

n-ary schemes use fixed canonical shapes: conjunctions are left-associated,
disjunctions right-nested, and agent-set conjunctions (A13) run over the
declared agent set in sorted order.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .syntax import (
    And,
    App,
    Atom,
    Bang,
    Box,
    Const,
    Cstit,
    Formula,
    Just,
    Know,
    Not,
    ProofTerm,
    Prove,
    Proven,
    Sum,
    Var,
    conjoin,
    disj,
    disjoin,
    dia,
    dual_cstit,
    dual_know,
    implies,
)


class SchemeId(Enum):
    A0_P1 = "A0.P1"
    A0_P2 = "A0.P2"
    A0_P3 = "A0.P3"
    A0_C1 = "A0.C1"
    A0_C2 = "A0.C2"
    A0_C3 = "A0.C3"
    A1_BOX_K = "A1.Box.K"
    A1_BOX_T = "A1.Box.T"
    A1_BOX_5 = "A1.Box.5"
    A1_CSTIT_K = "A1.Cstit.K"
    A1_CSTIT_T = "A1.Cstit.T"
    A1_CSTIT_5 = "A1.Cstit.5"
    A2 = "A2"
    A3 = "A3"
    A4 = "A4"
    A5 = "A5"
    A6 = "A6"
    A7_K = "A7.K"
    A7_T = "A7.T"
    A7_4 = "A7.4"
    A8 = "A8"
    A9 = "A9"
    A10 = "A10"
    A11 = "A11"
    A12 = "A12"
    A13 = "A13"

    @property
    def is_a0(self) -> bool:
        return self.value.startswith("A0.")


A0_GROUP = tuple(s for s in SchemeId if s.is_a0)
NORMALITY_GROUP = tuple(s for s in SchemeId if not s.is_a0)


@dataclass(frozen=True)
class MatchResult:
    scheme: SchemeId
    bindings: dict  # metavariable name -> Formula | ProofTerm | Agent | int | tuple

    def __post_init__(self):
        object.__setattr__(self, "bindings", dict(self.bindings))


# Metavariable markers usable inside template ASTs.

@dataclass(frozen=True, slots=True)
class MetaF(Formula):
    name: str


@dataclass(frozen=True, slots=True)
class MetaT(ProofTerm):
    name: str


@dataclass(frozen=True, slots=True)
class MetaA:
    name: str


def _mf(n):
    return MetaF(n)


_A, _B, _C = _mf("A"), _mf("B"), _mf("C")
_s, _t = MetaT("s"), MetaT("t")
_j, _i = MetaA("j"), MetaA("i")

# Fixed (non-variadic) templates, in trial order.
_FIXED_TEMPLATES: dict[SchemeId, Formula] = {
    SchemeId.A0_P1: implies(_A, implies(_B, _A)),
    SchemeId.A0_P2: implies(implies(_A, implies(_B, _C)),
                            implies(implies(_A, _B), implies(_A, _C))),
    SchemeId.A0_P3: implies(implies(Not(_B), Not(_A)), implies(_A, _B)),
    SchemeId.A0_C1: implies(And(_A, _B), _A),
    SchemeId.A0_C2: implies(And(_A, _B), _B),
    SchemeId.A0_C3: implies(_A, implies(_B, And(_A, _B))),
    SchemeId.A1_BOX_K: implies(Box(implies(_A, _B)), implies(Box(_A), Box(_B))),
    SchemeId.A1_BOX_T: implies(Box(_A), _A),
    SchemeId.A1_BOX_5: implies(dia(_A), Box(dia(_A))),
    SchemeId.A1_CSTIT_K: implies(Cstit(_j, implies(_A, _B)),
                                 implies(Cstit(_j, _A), Cstit(_j, _B))),
    SchemeId.A1_CSTIT_T: implies(Cstit(_j, _A), _A),
    SchemeId.A1_CSTIT_5: implies(dual_cstit(_j, _A), Cstit(_j, dual_cstit(_j, _A))),
    SchemeId.A2: implies(Box(_A), Cstit(_j, _A)),
    SchemeId.A4: implies(Just(_s, implies(_A, _B)),
                         implies(Just(_t, _A), Just(App(_s, _t), _B))),
    SchemeId.A5: implies(Just(_t, _A), And(Just(Bang(_t), Just(_t, _A)), Know(_A))),
    SchemeId.A6: implies(disj(Just(_s, _A), Just(_t, _A)), Just(Sum(_s, _t), _A)),
    SchemeId.A7_K: implies(Know(implies(_A, _B)), implies(Know(_A), Know(_B))),
    SchemeId.A7_T: implies(Know(_A), _A),
    SchemeId.A7_4: implies(Know(_A), Know(Know(_A))),
    SchemeId.A8: implies(Know(_A), Box(Know(Box(_A)))),
    SchemeId.A9: implies(Prove(_j, _A),
                         conjoin([Not(Proven(_A)), Cstit(_j, Prove(_j, _A)), Know(_A)])),
    SchemeId.A10: implies(Box(Prove(_j, _A)), Box(Prove(_i, _A))),
    SchemeId.A11: implies(Proven(_A), And(Know(Proven(_A)), Know(_A))),
}


def _match_node(pattern, value, bnd: dict, agents: Optional[frozenset]) -> bool:
    if isinstance(pattern, MetaF):
        if not isinstance(value, Formula):
            return False
        prior = bnd.get(pattern.name)
        if prior is None:
            bnd[pattern.name] = value
            return True
        return prior == value
    if isinstance(pattern, MetaT):
        if not isinstance(value, ProofTerm):
            return False
        prior = bnd.get(pattern.name)
        if prior is None:
            bnd[pattern.name] = value
            return True
        return prior == value
    if isinstance(pattern, MetaA):
        if not isinstance(value, str):
            return False
        if agents is not None and value not in agents:
            return False
        prior = bnd.get(pattern.name)
        if prior is None:
            bnd[pattern.name] = value
            return True
        return prior == value
    if type(pattern) is not type(value):
        return False
    if isinstance(pattern, (Atom, )):
        return pattern.name == value.name
    if isinstance(pattern, (Var,)):
        return pattern.name == value.name
    if isinstance(pattern, Not):
        return _match_node(pattern.operand, value.operand, bnd, agents)
    if isinstance(pattern, And):
        return (_match_node(pattern.left, value.left, bnd, agents)
                and _match_node(pattern.right, value.right, bnd, agents))
    if isinstance(pattern, Box):
        return _match_node(pattern.operand, value.operand, bnd, agents)
    if isinstance(pattern, Know):
        return _match_node(pattern.operand, value.operand, bnd, agents)
    if isinstance(pattern, Proven):
        return _match_node(pattern.operand, value.operand, bnd, agents)
    if isinstance(pattern, Cstit):
        return (_match_node(pattern.agent, value.agent, bnd, agents)
                and _match_node(pattern.operand, value.operand, bnd, agents))
    if isinstance(pattern, Prove):
        return (_match_node(pattern.agent, value.agent, bnd, agents)
                and _match_node(pattern.operand, value.operand, bnd, agents))
    if isinstance(pattern, Just):
        return (_match_node(pattern.term, value.term, bnd, agents)
                and _match_node(pattern.operand, value.operand, bnd, agents))
    if isinstance(pattern, Sum):
        return (_match_node(pattern.left, value.left, bnd, agents)
                and _match_node(pattern.right, value.right, bnd, agents))
    if isinstance(pattern, App):
        return (_match_node(pattern.left, value.left, bnd, agents)
                and _match_node(pattern.right, value.right, bnd, agents))
    if isinstance(pattern, Bang):
        return _match_node(pattern.inner, value.inner, bnd, agents)
    raise TypeError(f"unmatchable pattern node {pattern!r}")


def _subst(pattern, bnd: dict):
    if isinstance(pattern, MetaF):
        return bnd[pattern.name]
    if isinstance(pattern, MetaT):
        return bnd[pattern.name]
    if isinstance(pattern, MetaA):
        return bnd[pattern.name]
    if isinstance(pattern, (Atom, Var, Const)):
        return pattern
    if isinstance(pattern, Not):
        return Not(_subst(pattern.operand, bnd))
    if isinstance(pattern, And):
        return And(_subst(pattern.left, bnd), _subst(pattern.right, bnd))
    if isinstance(pattern, Box):
        return Box(_subst(pattern.operand, bnd))
    if isinstance(pattern, Know):
        return Know(_subst(pattern.operand, bnd))
    if isinstance(pattern, Proven):
        return Proven(_subst(pattern.operand, bnd))
    if isinstance(pattern, Cstit):
        return Cstit(_subst(pattern.agent, bnd), _subst(pattern.operand, bnd))
    if isinstance(pattern, Prove):
        return Prove(_subst(pattern.agent, bnd), _subst(pattern.operand, bnd))
    if isinstance(pattern, Just):
        return Just(_subst(pattern.term, bnd), _subst(pattern.operand, bnd))
    if isinstance(pattern, Sum):
        return Sum(_subst(pattern.left, bnd), _subst(pattern.right, bnd))
    if isinstance(pattern, App):
        return App(_subst(pattern.left, bnd), _subst(pattern.right, bnd))
    if isinstance(pattern, Bang):
        return Bang(_subst(pattern.inner, bnd))
    raise TypeError(f"cannot substitute into {pattern!r}")


# --- n-ary helpers: chains in canonical shape

def unfold_conjunction(f: Formula) -> list[Formula]:
    """Maximal unfolding of a left-associated conjunction."""
    parts: list[Formula] = []
    while isinstance(f, And):
        parts.append(f.right)
        f = f.left
    parts.append(f)
    parts.reverse()
    return parts


def unfold_disjunction(f: Formula) -> list[Formula]:
    """Maximal unfolding of a right-nested (desugared) disjunction."""
    parts: list[Formula] = []
    while (xy := split_disjunction_strict(f)) is not None:
        parts.append(xy[0])
        f = xy[1]
    parts.append(f)
    return parts


def split_disjunction_strict(f: Formula):
    if (
        isinstance(f, Not)
        and isinstance(f.operand, And)
        and isinstance(f.operand.left, Not)
        and isinstance(f.operand.right, Not)
    ):
        return f.operand.left.operand, f.operand.right.operand
    return None


def _split_dia_cstit(f: Formula):
    # shape of a single A3 antecedent conjunct: <>[j]A
    if (
        isinstance(f, Not)
        and isinstance(f.operand, Box)
        and isinstance(f.operand.operand, Not)
        and isinstance(f.operand.operand.operand, Cstit)
    ):
        c = f.operand.operand.operand
        return c.agent, c.operand
    return None


def _split_dual_know(f: Formula):
    if isinstance(f, Not) and isinstance(f.operand, Know) and isinstance(f.operand.operand, Not):
        return f.operand.operand.operand
    return None


def _split_dia(f: Formula):
    if isinstance(f, Not) and isinstance(f.operand, Box) and isinstance(f.operand.operand, Not):
        return f.operand.operand.operand
    return None


def _split_implies(f: Formula):
    if isinstance(f, Not) and isinstance(f.operand, And) and isinstance(f.operand.right, Not):
        return f.operand.left, f.operand.right.operand
    return None


def _match_a3(f: Formula, agents: Optional[frozenset]) -> Optional[MatchResult]:
    ab = _split_implies(f)
    if ab is None:
        return None
    ante, cons = ab
    ante_parts = unfold_conjunction(ante)
    pairs = []
    for part in ante_parts:
        ja = _split_dia_cstit(part)
        if ja is None:
            return None
        pairs.append(ja)
    js = [j for j, _ in pairs]
    if len(set(js)) != len(js):
        return None  # agents must be pairwise different
    if agents is not None and not set(js) <= agents:
        return None
    body = _split_dia(cons)
    if body is None:
        return None
    cons_parts = unfold_conjunction(body)
    if len(cons_parts) != len(pairs):
        return None
    for part, (j, a) in zip(cons_parts, pairs):
        if part != Cstit(j, a):
            return None
    bindings = {"n": len(pairs)}
    for k, (j, a) in enumerate(pairs, start=1):
        bindings[f"j{k}"] = j
        bindings[f"A{k}"] = a
    return MatchResult(SchemeId.A3, bindings)


def _match_a12(f: Formula, agents: Optional[frozenset]) -> Optional[MatchResult]:
    if not (isinstance(f, Not) and isinstance(f.operand, Know)):
        return None
    parts = unfold_disjunction(f.operand.operand)
    pairs = []
    for part in parts:
        inner = _split_dual_know(part)
        if inner is None:
            return None
        body = _split_dia(inner)
        if body is None or not isinstance(body, Prove):
            return None
        if agents is not None and body.agent not in agents:
            return None
        pairs.append((body.agent, body.operand))
    bindings = {"n": len(pairs)}
    for k, (j, a) in enumerate(pairs, start=1):
        bindings[f"j{k}"] = j
        bindings[f"A{k}"] = a
    return MatchResult(SchemeId.A12, bindings)


def _match_a13(f: Formula, agents: Optional[frozenset]) -> Optional[MatchResult]:
    ab = _split_implies(f)
    if ab is None:
        return None
    ante, cons = ab
    if not (isinstance(ante, Not) and isinstance(ante.operand, Prove)):
        return None
    j, a = ante.operand.agent, ante.operand.operand
    # consequent: <j>(conjunction of ~Prove(i, A) over the agent set, sorted)
    if not (isinstance(cons, Not) and isinstance(cons.operand, Cstit)
            and cons.operand.agent == j and isinstance(cons.operand.operand, Not)):
        return None
    conj = cons.operand.operand.operand
    parts = unfold_conjunction(conj)
    seen = []
    for part in parts:
        if not (isinstance(part, Not) and isinstance(part.operand, Prove)):
            return None
        if part.operand.operand != a:
            return None
        seen.append(part.operand.agent)
    expected = sorted(agents) if agents is not None else sorted(set(seen))
    if seen != expected:
        return None
    if j not in seen:
        return None
    return MatchResult(SchemeId.A13, {"j": j, "A": a, "Ag": tuple(expected)})


_TRIAL_ORDER = tuple(SchemeId)


def match_scheme(f: Formula, scheme: SchemeId,
                 agents: Optional[frozenset] = None) -> Optional[MatchResult]:
    """Match f against one specific scheme; None when it is not an instance."""
    if agents is not None:
        agents = frozenset(agents)
    if scheme is SchemeId.A3:
        return _match_a3(f, agents)
    if scheme is SchemeId.A12:
        return _match_a12(f, agents)
    if scheme is SchemeId.A13:
        return _match_a13(f, agents)
    bnd: dict = {}
    if _match_node(_FIXED_TEMPLATES[scheme], f, bnd, agents):
        return MatchResult(scheme, bnd)
    return None


def match_axiom(f: Formula, agents: Optional[frozenset] = None,
                schemes: tuple[SchemeId, ...] = _TRIAL_ORDER) -> Optional[MatchResult]:
    """First scheme (in trial order) of which f is a substitution instance.

    ``agents`` is the declared agent set; agent metavariables may only bind
    members of it, and the A13 agent-set conjunction must run over exactly
    this set.  With ``agents=None`` any identifier is accepted and the A13
    set is inferred from the conjunction itself.
    """
    for scheme in schemes:
        res = match_scheme(f, scheme, agents)
        if res is not None:
            return res
    return None


def is_normality_instance(f: Formula, agents: Optional[frozenset] = None) -> bool:
    """True iff f instantiates a scheme outside the A0 group (A1 through A13)."""
    return match_axiom(f, agents, schemes=NORMALITY_GROUP) is not None


def instantiate(scheme: SchemeId, bindings: dict,
                agents: Optional[frozenset] = None) -> Formula:
    """Rebuild the canonical instance of a scheme from a bindings map.

    Inverse of matching: ``instantiate(r.scheme, r.bindings)`` reproduces the
    matched formula exactly.
    """
    if scheme is SchemeId.A3:
        n = bindings["n"]
        pairs = [(bindings[f"j{k}"], bindings[f"A{k}"]) for k in range(1, n + 1)]
        ante = conjoin([dia(Cstit(j, a)) for j, a in pairs])
        cons = dia(conjoin([Cstit(j, a) for j, a in pairs]))
        return implies(ante, cons)
    if scheme is SchemeId.A12:
        n = bindings["n"]
        pairs = [(bindings[f"j{k}"], bindings[f"A{k}"]) for k in range(1, n + 1)]
        return Not(Know(disjoin([dual_know(dia(Prove(j, a))) for j, a in pairs])))
    if scheme is SchemeId.A13:
        group = bindings.get("Ag")
        if group is None:
            if agents is None:
                raise ValueError("A13 needs an agent set (bindings['Ag'] or agents=)")
            group = tuple(sorted(agents))
        j, a = bindings["j"], bindings["A"]
        body = conjoin([Not(Prove(i, a)) for i in group])
        return implies(Not(Prove(j, a)), dual_cstit(j, body))
    return _subst(_FIXED_TEMPLATES[scheme], bindings)
