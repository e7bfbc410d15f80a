"""The satisfaction relation over finite validated models.

Evaluation is classical on atoms and Boolean connectives and quantifies as
follows at a moment-history pair (m, h):

    [j]A        true at every history in j's choice cell at m containing h
    box A       true at every history through m
    K A         true at every pair (m', h') with R(m, m') and h' through m'
    t:A         A is in the evidence of t at m, and K A holds
    Proven(A)   some term presented on every history through m proves A
    Prove(j,A)  positive condition: every history in the cell presents some
                term proving A; negative condition: no term proving A is
                presented on every history through m

The negative condition of Prove is the negation of the Proven clause; the
literal quantifier form (over every term presented anywhere at m, plus the
universe) is kept as ``eval_prove_direct`` and used as a test oracle
against the shortcut.

box A, K A, t:A and Proven(A) are moment-determinate: their truth does not
depend on the history coordinate.  The evaluator memoizes them per moment,
which keeps nested epistemic quantifiers polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass

from .syntax import (
    And,
    Atom,
    Box,
    Cstit,
    Formula,
    JstitError,
    Just,
    Know,
    Not,
    ProofTerm,
    Prove,
    Proven,
    agents_of,
)
from .model import History, Model, Moment


@dataclass(frozen=True, slots=True)
class EvalPoint:
    m: Moment
    h: History


class EvaluationError(JstitError):
    pass


def is_md_form(f: Formula) -> bool:
    """Boolean combinations of box A, K A, t:A, Proven(A) are moment-determinate."""
    if isinstance(f, (Box, Know, Just, Proven)):
        return True
    if isinstance(f, Not):
        return is_md_form(f.operand)
    if isinstance(f, And):
        return is_md_form(f.left) and is_md_form(f.right)
    return False


class Evaluator:
    """Evaluation session against one (universe-extended) model.

    The memo tables for moment-determinate subformulas are per instance, so
    concurrent evaluations on the same model never share mutable state.
    """

    def __init__(self, model: Model, formula: Formula = None, check: bool = True):
        if check:
            if model.mode != "completed":
                raise EvaluationError("evaluation requires a completed-mode model")
            report = model.validate()
            if not report.ok:
                raise EvaluationError(
                    f"model fails validation: {report.violations[0]}")
            if formula is not None:
                unknown = agents_of(formula) - set(model.agents)
                if unknown:
                    raise EvaluationError(f"unknown agent(s) {sorted(unknown)}")
        if formula is not None:
            model = model.extended(formulas=[formula])
        self.model = model
        self._md_memo: dict = {}

    # --- moment-determinate helpers (memoized per moment)

    def _box(self, m: Moment, g: Formula) -> bool:
        key = ("box", m, g)
        hit = self._md_memo.get(key)
        if hit is None:
            hit = all(self._eval(m, h, g) for h in self.model.h_at[m])
            self._md_memo[key] = hit
        return hit

    def _know(self, m: Moment, g: Formula) -> bool:
        key = ("K", m, g)
        hit = self._md_memo.get(key)
        if hit is None:
            hit = all(
                self._eval(m2, h2, g)
                for m2 in self.model.r_succ[m]
                for h2 in self.model.h_at[m2]
            )
            self._md_memo[key] = hit
        return hit

    def _just(self, m: Moment, t: ProofTerm, g: Formula) -> bool:
        key = ("just", m, t, g)
        hit = self._md_memo.get(key)
        if hit is None:
            hit = (g in self.model.evidence_table.get((m, t), frozenset())
                   and self._know(m, g))
            self._md_memo[key] = hit
        return hit

    def _proven(self, m: Moment, g: Formula) -> bool:
        key = ("proven", m, g)
        hit = self._md_memo.get(key)
        if hit is None:
            hit = any(self._just(m, t, g)
                      for t in self.model.act_intersection(m))
            self._md_memo[key] = hit
        return hit

    # --- the satisfaction relation

    def _eval(self, m: Moment, h: History, f: Formula) -> bool:
        if isinstance(f, Atom):
            return self.model.atom_true(f.name, m, h)
        if isinstance(f, Not):
            return not self._eval(m, h, f.operand)
        if isinstance(f, And):
            return self._eval(m, h, f.left) and self._eval(m, h, f.right)
        if isinstance(f, Cstit):
            cell = self.model.choice_cell(m, f.agent, h)
            return all(self._eval(m, h2, f.operand) for h2 in cell)
        if isinstance(f, Box):
            return self._box(m, f.operand)
        if isinstance(f, Know):
            return self._know(m, f.operand)
        if isinstance(f, Just):
            return self._just(m, f.term, f.operand)
        if isinstance(f, Proven):
            return self._proven(m, f.operand)
        if isinstance(f, Prove):
            return (self._prove_positive(m, h, f.agent, f.operand)
                    and not self._proven(m, f.operand))
        raise TypeError(f"not a formula: {f!r}")

    def _prove_positive(self, m: Moment, h: History, j: str, g: Formula) -> bool:
        cell = self.model.choice_cell(m, j, h)
        return all(
            any(self._just(m, t, g) for t in self.model.act_at(m, h2))
            for h2 in cell
        )

    def at(self, m: Moment, h: History, f: Formula) -> bool:
        if m not in self.model.h_at:
            raise EvaluationError(f"unknown moment {m!r}")
        if h not in self.model.h_at[m]:
            raise EvaluationError(f"history {h!r} does not pass through {m!r}")
        return self._eval(m, h, f)


def eval_formula(model: Model, m: Moment, h: History, f: Formula,
                 check: bool = True) -> bool:
    """Truth of f at the moment-history pair (m, h)."""
    return Evaluator(model, f, check=check).at(m, h, f)


def eval_md(model: Model, m: Moment, f: Formula, check: bool = True) -> bool:
    """Truth of a moment-determinate formula at a moment (any history)."""
    if not is_md_form(f):
        raise EvaluationError(f"not a moment-determinate formula: {f!r}")
    ev = Evaluator(model, f, check=check)
    if m not in model.h_at:
        raise EvaluationError(f"unknown moment {m!r}")
    h = min(model.h_at[m])
    return ev.at(m, h, f)


def eval_prove_direct(model: Model, m: Moment, h: History, j: str, g: Formula,
                      check: bool = True) -> bool:
    """Prove(j, A) with the negative condition evaluated literally.

    The negative condition quantifies over all proof polynomials; a term
    that is not presented at m anywhere satisfies it vacuously, so it
    suffices to range over every term presented at m on some history plus
    the universe terms.
    """
    f = Prove(j, g)
    ev = Evaluator(model, f, check=check)
    model = ev.model
    if m not in model.h_at:
        raise EvaluationError(f"unknown moment {m!r}")
    if h not in model.h_at[m]:
        raise EvaluationError(f"history {h!r} does not pass through {m!r}")
    if j not in model.agents:
        raise EvaluationError(f"unknown agent {j!r}")
    if not ev._prove_positive(m, h, j, g):
        return False
    hm = model.h_at[m]
    candidates = set(model.universe.terms)
    for h2 in hm:
        candidates |= model.act_at(m, h2)
    for s in candidates:
        if ev._just(m, s, g) and all(s in model.act_at(m, h2) for h2 in hm):
            return False  # negative condition fails at witness s
    return True


def satisfying_points(model: Model, f: Formula,
                      check: bool = True) -> frozenset[EvalPoint]:
    """All moment-history pairs of the model at which f is true."""
    ev = Evaluator(model, f, check=check)
    return frozenset(
        EvalPoint(m, h)
        for m in model.moments
        for h in model.h_at[m]
        if ev.at(m, h, f)
    )


def valid_in_model(model: Model, f: Formula, check: bool = True) -> bool:
    """True iff f holds at every moment-history pair of the model."""
    ev = Evaluator(model, f, check=check)
    return all(
        ev.at(m, h, f)
        for m in model.moments
        for h in model.h_at[m]
    )
