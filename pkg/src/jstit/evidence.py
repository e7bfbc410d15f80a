"""Closure of the evidence base into the effective evidence function.

The semantic evidence function maps (moment, term) pairs to sets of
formulas.  Stated over the full language it is infinite (normality alone
puts infinitely many scheme instances at every constant), so all queries
are answered relative to the model's finite universe: the closed table is
the least fixpoint, within the universe, of

  (i)   the base entries;
  (ii)  normality: every universe formula that instantiates one of the
        A1-A13 schemes belongs to the evidence of every universe constant
        at every moment;
  (iii) monotone propagation along the epistemic preorder R;
  (iv)  term-structure closure for composite universe terms:
        application   A->B in E(m,s) and A in E(m,t)  =>  B in E(m, s*t)
        sum           E(m,s) | E(m,t) subset of E(m, s+t)
        proof checker A in E(m,t)  =>  t:A in E(m, !t)   (when t:A is in
        the universe)

This is a sound under-approximation of the unrestricted function: the
application rule only ever needs mediating formulas that are themselves
in the universe.  Enlarging the universe never removes memberships.
"""

from __future__ import annotations

from collections import defaultdict
from functools import lru_cache

from .syntax import App, Bang, Const, Formula, Just, ProofTerm, Sum, split_implication
from .schemes import is_normality_instance


@lru_cache(maxsize=4096)
def _normality_set(universe_formulas: frozenset, agents: tuple) -> frozenset:
    agent_set = frozenset(agents)
    return frozenset(
        f for f in universe_formulas if is_normality_instance(f, agent_set)
    )


def normality_instances(model) -> frozenset[Formula]:
    """Universe formulas that instantiate one of the A1-A13 schemes."""
    return _normality_set(model.universe.formulas, model.agents)


def close_evidence(model) -> dict:
    """Least fixpoint table {(moment, term): frozenset of formulas}.

    Only entries with at least one formula are materialized; absent keys
    read as empty.
    """
    univ_f = model.universe.formulas
    univ_t = model.universe.terms
    table: dict = defaultdict(set)

    for (m, t), fs in model.evidence_base.items():
        table[(m, t)].update(fs & univ_f)
    normal = _normality_set(univ_f, model.agents)
    if normal:
        for t in univ_t:
            if isinstance(t, Const):
                for m in model.moments:
                    table[(m, t)].update(normal)

    apps = [t for t in univ_t if isinstance(t, App)]
    sums = [t for t in univ_t if isinstance(t, Sum)]
    bangs = [t for t in univ_t if isinstance(t, Bang)]
    strict_r = [(m, m2) for (m, m2) in model.r_pairs if m != m2]

    changed = True
    while changed:
        changed = False
        for m, m2 in strict_r:
            for t in univ_t:
                src = table.get((m, t))
                if not src:
                    continue
                dst = table[(m2, t)]
                if not src <= dst:
                    dst |= src
                    changed = True
        for m in model.moments:
            for t in apps:
                left = table.get((m, t.left))
                right = table.get((m, t.right))
                if not left or not right:
                    continue
                dst = table[(m, t)]
                for f in list(left):
                    ab = split_implication(f)
                    if ab is not None and ab[0] in right and ab[1] not in dst:
                        dst.add(ab[1])
                        changed = True
            for t in sums:
                merged = table.get((m, t.left), set()) | table.get((m, t.right), set())
                if merged:
                    dst = table[(m, t)]
                    if not merged <= dst:
                        dst |= merged
                        changed = True
            for t in bangs:
                inner = table.get((m, t.inner))
                if not inner:
                    continue
                dst = table[(m, t)]
                for a in list(inner):
                    checked = Just(t.inner, a)
                    if checked in univ_f and checked not in dst:
                        dst.add(checked)
                        changed = True

    return {k: frozenset(v) for k, v in table.items() if v}


def evidence_contains(model, m: str, t: ProofTerm, a: Formula) -> bool:
    """Is formula a in the effective evidence of term t at moment m?

    Queries outside the model's universe trigger a re-closure over the
    enlarged universe; the model itself is never mutated.
    """
    if t not in model.universe.terms or a not in model.universe.formulas:
        model = model.extended(formulas=[a], terms=[t])
    return a in model.evidence_table.get((m, t), frozenset())
