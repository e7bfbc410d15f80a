"""Finite branching-time models and their well-formedness constraints.

A model is a finite rooted tree of moments.  Histories are identified with
leaves: the history named by leaf ``l`` is the root-to-``l`` path, and the
set of histories through a moment ``m`` (written ``H_m`` below) is the set
of leaves below ``m``.  Representing the temporal order as a rooted tree
makes historical connection (constraint 1) and no backward branching
(constraint 2) true by construction; storing the epistemic preorder R as
the closure of extra edges plus the temporal order makes "future always
matters" (constraint 10) true by construction as well.

``validate`` checks the remaining constraints and reports violations as
data:

    3   no choice between undivided histories
    4   independence of agents
    5   monotonicity of evidence            (raw mode only)
    6   evidence closure properties         (raw mode only)
    7   expansion of presented proofs
    8   no new proofs guaranteed
    9   presenting a new proof makes histories divide
    11  presented proofs are epistemically transparent
    normality: instances of the A1-A13 schemes over the universe are
    present in the evidence of every constant at every moment

Model files are UTF-8 JSON; see ``load_model`` for the schema.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .syntax import (
    App,
    Atom,
    Bang,
    Const,
    Formula,
    JstitError,
    Just,
    ParseError,
    ProofTerm,
    Sum,
    parse_formula,
    parse_term,
    subformulas,
    subterms,
)
from .schemes import is_normality_instance

Moment = str
History = str  # a history is named by its leaf


class ModelLoadError(JstitError):
    """Malformed model file: bad JSON, bad grammar, or dangling references."""


@dataclass(frozen=True)
class Universe:
    """Finite closure universe for evidence queries.

    Closed under subformulas and subterms; a superset of every formula and
    term occurring in the evidence base, the act map, the valuation and any
    query evaluated against the model.
    """

    formulas: frozenset[Formula]
    terms: frozenset[ProofTerm]


def close_universe(formulas: Iterable[Formula],
                   terms: Iterable[ProofTerm]) -> Universe:
    fset: set[Formula] = set()
    for f in formulas:
        fset |= subformulas(f)
    tset: set[ProofTerm] = set()
    for t in terms:
        tset |= subterms(t)
    for f in fset:
        if isinstance(f, Just):
            tset |= subterms(f.term)
    return Universe(frozenset(fset), frozenset(tset))


@dataclass(frozen=True)
class Violation:
    constraint: str
    message: str
    witnesses: dict = field(default_factory=dict)

    def __str__(self):
        return f"{self.constraint}: {self.message}"


@dataclass
class ViolationReport:
    violations: list[Violation]
    satisfied_by_construction: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self):
        lines = [str(v) for v in self.violations]
        lines += [f"{c}: satisfied by construction"
                  for c in self.satisfied_by_construction]
        return "\n".join(lines) if lines else "clean"


class Model:
    """Immutable finite jstit model.

    Structure components: agent set, moment tree, choice partitions, act
    assignments, epistemic preorder, evidence base, valuation, and the
    finite closure universe.  In ``completed`` mode the semantic evidence
    function is the closure of the base (see ``jstit.evidence``); in ``raw``
    mode the base is served verbatim so that ``validate`` can detect user
    violations of monotonicity/closure.
    """

    __slots__ = (
        "agents", "root", "children", "parent", "moments", "leaves",
        "path", "h_at", "ancestors", "choice", "_cell_of", "act",
        "r_extra", "r_succ", "r_pairs", "evidence_base", "valuation",
        "universe", "mode", "_evidence_table", "_validation",
    )

    def __init__(
        self,
        agents: Iterable[str],
        root: Moment,
        children: dict[Moment, tuple[Moment, ...]],
        choice: Optional[dict[tuple[Moment, str], tuple[frozenset[History], ...]]] = None,
        act: Optional[dict[tuple[Moment, History], frozenset[ProofTerm]]] = None,
        r_extra: Iterable[tuple[Moment, Moment]] = (),
        evidence_base: Optional[dict[tuple[Moment, ProofTerm], frozenset[Formula]]] = None,
        valuation: Optional[dict[str, frozenset[tuple[Moment, History]]]] = None,
        universe: Optional[Universe] = None,
        mode: str = "completed",
    ):
        if mode not in ("raw", "completed"):
            raise ModelLoadError(f"unknown mode {mode!r}")
        self.agents = tuple(sorted(set(agents)))
        if not self.agents:
            raise ModelLoadError("agent set must be nonempty")
        self.root = root
        self.children = {m: tuple(cs) for m, cs in children.items()}

        # tree order: parents, BFS moment order, leaves, root paths
        self.parent: dict[Moment, Optional[Moment]] = {root: None}
        order = [root]
        seen = {root}
        for m in order:
            for c in self.children.get(m, ()):
                if c in seen:
                    raise ModelLoadError(f"moment {c!r} has two parents or a cycle")
                seen.add(c)
                self.parent[c] = m
                order.append(c)
        self.moments = tuple(order)
        declared = set(self.children) | {c for cs in self.children.values() for c in cs}
        declared.add(root)
        if declared - seen:
            raise ModelLoadError(f"moments unreachable from root: {sorted(declared - seen)}")
        self.leaves = tuple(m for m in self.moments if not self.children.get(m))

        path: dict[History, tuple[Moment, ...]] = {}
        for leaf in self.leaves:
            rev = [leaf]
            while (p := self.parent[rev[-1]]) is not None:
                rev.append(p)
            path[leaf] = tuple(reversed(rev))
        self.path = path
        h_at: dict[Moment, set[History]] = {m: set() for m in self.moments}
        for leaf, ms in path.items():
            for m in ms:
                h_at[m].add(leaf)
        self.h_at = {m: frozenset(hs) for m, hs in h_at.items()}
        anc: dict[Moment, frozenset[Moment]] = {}
        for m in self.moments:
            p = self.parent[m]
            anc[m] = frozenset({m}) if p is None else anc[p] | {m}
        self.ancestors = anc  # reflexive

        # choice partitions; absent entries default to the vacuous partition
        self.choice = {}
        self._cell_of = {}
        for (m, j), cells in (choice or {}).items():
            if m not in self.h_at:
                raise ModelLoadError(f"choice at unknown moment {m!r}")
            if j not in self.agents:
                raise ModelLoadError(f"choice for unknown agent {j!r}")
            flat = [h for cell in cells for h in cell]
            if sorted(flat) != sorted(self.h_at[m]):
                raise ModelLoadError(
                    f"choice cells at ({m!r}, {j!r}) are not a partition of H_m")
            self.choice[(m, j)] = tuple(frozenset(c) for c in cells)
            for cell in self.choice[(m, j)]:
                for h in cell:
                    self._cell_of[(m, j, h)] = cell

        # act assignments; absent entries default to the empty set
        self.act = {}
        for (m, h), ts in (act or {}).items():
            if m not in self.h_at or h not in self.h_at[m]:
                raise ModelLoadError(f"act entry at ({m!r}, {h!r}) but {h!r} is not in H_m")
            self.act[(m, h)] = frozenset(ts)

        # epistemic preorder: closure of the tree order plus extra edges
        self.r_extra = frozenset(r_extra)
        for m, m2 in self.r_extra:
            if m not in self.h_at or m2 not in self.h_at:
                raise ModelLoadError(f"r_extra edge ({m!r}, {m2!r}) with unknown moment")
        succ: dict[Moment, set[Moment]] = {m: {m} for m in self.moments}
        for m in self.moments:
            for leaf in self.h_at[m]:
                succ[m].update(x for x in self.path[leaf] if m in self.ancestors[x])
        for m, m2 in self.r_extra:
            succ[m].add(m2)
        changed = True
        while changed:
            changed = False
            for m in self.moments:
                grown = set().union(*(succ[x] for x in succ[m]))
                if not grown <= succ[m]:
                    succ[m] |= grown
                    changed = True
        self.r_succ = {m: tuple(x for x in self.moments if x in succ[m])
                       for m in self.moments}
        self.r_pairs = frozenset(
            (m, m2) for m in self.moments for m2 in self.r_succ[m])

        # evidence base and valuation
        self.evidence_base = {}
        for (m, t), fs in (evidence_base or {}).items():
            if m not in self.h_at:
                raise ModelLoadError(f"evidence at unknown moment {m!r}")
            self.evidence_base[(m, t)] = frozenset(fs)
        self.valuation = {}
        for atom, pairs in (valuation or {}).items():
            for m, h in pairs:
                if m not in self.h_at or h not in self.h_at[m]:
                    raise ModelLoadError(
                        f"valuation pair ({m!r}, {h!r}) for {atom!r} is not a moment-history pair")
            self.valuation[atom] = frozenset(tuple(p) for p in pairs)

        # finite universe: declared content plus everything that occurs
        if universe is not None and self._universe_covers(universe):
            self.universe = universe
        else:
            formulas: set[Formula] = set(universe.formulas) if universe else set()
            terms: set[ProofTerm] = set(universe.terms) if universe else set()
            for fs in self.evidence_base.values():
                formulas |= fs
            terms.update(t for (_, t) in self.evidence_base)
            for ts in self.act.values():
                terms |= ts
            formulas.update(Atom(a) for a in self.valuation)
            self.universe = close_universe(formulas, terms)

        self.mode = mode
        self._evidence_table = None
        self._validation = None

    def _universe_covers(self, universe: "Universe") -> bool:
        uf, ut = universe.formulas, universe.terms
        for (_, t), fs in self.evidence_base.items():
            if t not in ut or not fs <= uf:
                return False
        for ts in self.act.values():
            if not ts <= ut:
                return False
        return all(Atom(a) in uf for a in self.valuation)

    @classmethod
    def _from_skeleton(cls, skel: "Model", choice: dict, cell_of: dict,
                       act: dict, r_pairs: frozenset, r_succ: dict,
                       r_extra: frozenset, evidence_base: dict,
                       valuation: dict, universe: "Universe") -> "Model":
        """Trusted fast constructor for enumeration loops.

        Shares the tree-derived structure of an existing model over the same
        tree; the caller supplies already-consistent components (an R closure
        matching r_extra, cell lookup matching choice, a universe covering
        all occurring content).
        """
        m = object.__new__(cls)
        m.agents = skel.agents
        m.root = skel.root
        m.children = skel.children
        m.parent = skel.parent
        m.moments = skel.moments
        m.leaves = skel.leaves
        m.path = skel.path
        m.h_at = skel.h_at
        m.ancestors = skel.ancestors
        m.choice = choice
        m._cell_of = cell_of
        m.act = act
        m.r_extra = r_extra
        m.r_succ = r_succ
        m.r_pairs = r_pairs
        m.evidence_base = evidence_base
        m.valuation = valuation
        m.universe = universe
        m.mode = "completed"
        m._evidence_table = None
        m._validation = None
        return m

    # --- basic observation -------------------------------------------------

    def histories(self) -> frozenset[History]:
        return frozenset(self.leaves)

    def histories_at(self, m: Moment) -> frozenset[History]:
        """H_m: the leaves whose root path contains m."""
        try:
            return self.h_at[m]
        except KeyError:
            raise JstitError(f"unknown moment {m!r}") from None

    def le(self, m1: Moment, m2: Moment) -> bool:
        """Temporal order: m1 is an ancestor of (or equal to) m2."""
        return m1 in self.ancestors[m2]

    def lt(self, m1: Moment, m2: Moment) -> bool:
        return m1 != m2 and m1 in self.ancestors[m2]

    def r(self, m1: Moment, m2: Moment) -> bool:
        """Epistemic accessibility (a preorder extending the temporal order)."""
        return (m1, m2) in self.r_pairs

    def choice_partition(self, m: Moment, j: str) -> tuple[frozenset[History], ...]:
        hm = self.histories_at(m)
        return self.choice.get((m, j), (hm,))

    def choice_cell(self, m: Moment, j: str, h: History) -> frozenset[History]:
        """The unique cell of j's partition at m containing h."""
        hm = self.histories_at(m)
        if h not in hm:
            raise JstitError(f"history {h!r} does not pass through {m!r}")
        return self._cell_of.get((m, j, h), hm)

    def act_at(self, m: Moment, h: History) -> frozenset[ProofTerm]:
        return self.act.get((m, h), frozenset())

    def act_intersection(self, m: Moment) -> frozenset[ProofTerm]:
        """Terms presented on every history through m."""
        hm = self.h_at[m]
        out = None
        for h in hm:
            cur = self.act_at(m, h)
            out = cur if out is None else out & cur
            if not out:
                break
        return out if out is not None else frozenset()

    def undivided_at(self, m: Moment, h: History, h2: History) -> bool:
        """True iff h and h2 share a strict successor of m (or h == h2 at a non-leaf)."""
        hm = self.histories_at(m)
        if h not in hm or h2 not in hm:
            raise JstitError(f"histories must pass through {m!r}")
        shared = (self.ancestors[h] if h == h2
                  else self.ancestors[h] & self.ancestors[h2])
        return any(self.lt(m, x) for x in shared)

    def undividedness_classes(self, m: Moment) -> tuple[frozenset[History], ...]:
        """Partition of H_m into groups sharing a child of m (leaf m: one class)."""
        kids = self.children.get(m, ())
        if not kids:
            return (self.h_at[m],)
        return tuple(self.h_at[c] for c in kids)

    def atom_true(self, atom: str, m: Moment, h: History) -> bool:
        return (m, h) in self.valuation.get(atom, frozenset())

    # --- evidence ----------------------------------------------------------

    @property
    def evidence_table(self) -> dict:
        """Effective evidence function, restricted to the universe.

        Completed mode: least closure of the base (monotone propagation
        along R, closure under application/sum/proof-checker, normality at
        constants).  Raw mode: the base itself.
        """
        if self._evidence_table is None:
            if self.mode == "completed":
                from .evidence import close_evidence
                self._evidence_table = close_evidence(self)
            else:
                self._evidence_table = dict(self.evidence_base)
        return self._evidence_table

    def extended(self, formulas: Iterable[Formula] = (),
                 terms: Iterable[ProofTerm] = ()) -> "Model":
        """A copy of this model whose universe also covers the given content."""
        new_universe = close_universe(
            set(self.universe.formulas) | set(formulas),
            set(self.universe.terms) | set(terms),
        )
        if (new_universe.formulas <= self.universe.formulas
                and new_universe.terms <= self.universe.terms):
            return self
        return Model(
            agents=self.agents,
            root=self.root,
            children=self.children,
            choice=self.choice,
            act=self.act,
            r_extra=self.r_extra,
            evidence_base=self.evidence_base,
            valuation=self.valuation,
            universe=new_universe,
            mode=self.mode,
        )

    # --- validation ---------------------------------------------------------

    def validate(self) -> ViolationReport:
        if self._validation is None:
            self._validation = _validate(self)
        return self._validation

    @property
    def is_valid(self) -> bool:
        return self.validate().ok

    # --- serialization -------------------------------------------------------

    def to_dict(self) -> dict:
        from .syntax import print_formula, print_term
        edges = [[m, c] for m in self.moments for c in self.children.get(m, ())]
        choice: dict = {}
        for (m, j), cells in sorted(self.choice.items()):
            choice.setdefault(m, {})[j] = [sorted(c) for c in cells]
        act: dict = {}
        for (m, h), ts in sorted(self.act.items()):
            act.setdefault(m, {})[h] = sorted(print_term(t) for t in ts)
        evidence: dict = {}
        for (m, t), fs in sorted(self.evidence_base.items(),
                                 key=lambda kv: (kv[0][0], print_term(kv[0][1]))):
            evidence.setdefault(m, {})[print_term(t)] = sorted(
                print_formula(f) for f in fs)
        valuation = {a: sorted([m, h] for m, h in pairs)
                     for a, pairs in sorted(self.valuation.items())}
        return {
            "agents": list(self.agents),
            "moments": list(self.moments),
            "root": self.root,
            "edges": edges,
            "choice": choice,
            "act": act,
            "r_extra": sorted([m, m2] for m, m2 in self.r_extra),
            "evidence": evidence,
            "valuation": valuation,
            "universe": {
                "formulas": sorted(print_formula(f) for f in self.universe.formulas),
                "terms": sorted(print_term(t) for t in self.universe.terms),
            },
            "mode": self.mode,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


# ---------------------------------------------------------------------------
# Loading

def load_model(text: str) -> Model:
    """Load a model from its JSON text.

    Schema: object with fields ``agents`` (list of strings), ``moments``
    (list), ``root`` (string), ``edges`` (list of [parent, child]),
    ``choice`` (moment -> agent -> list of list of leaf ids), ``act``
    (moment -> leaf id -> list of term strings), ``r_extra`` (list of
    [from, to]), ``evidence`` (moment -> term string -> list of formula
    strings), ``valuation`` (atom -> list of [moment, leaf id]), optional
    ``universe`` ({formulas: [...], terms: [...]}), optional ``mode``
    ("raw" | "completed", default "completed").  Unspecified choice
    entries are vacuous; unspecified act/evidence entries are empty.
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ModelLoadError(f"bad JSON: {e}") from None
    return model_from_dict(obj)


def load_model_path(path) -> Model:
    with open(path, "r", encoding="utf-8") as fh:
        return load_model(fh.read())


def model_from_dict(obj: dict) -> Model:
    if not isinstance(obj, dict):
        raise ModelLoadError("model file must be a JSON object")
    try:
        agents = obj["agents"]
        moments = obj["moments"]
        root = obj["root"]
    except KeyError as e:
        raise ModelLoadError(f"missing required field {e.args[0]!r}") from None
    if root not in moments:
        raise ModelLoadError(f"root {root!r} not among declared moments")
    moments_set = set(moments)
    children: dict[Moment, list[Moment]] = {m: [] for m in moments}
    for edge in obj.get("edges", []):
        parent, child = edge
        if parent not in moments_set or child not in moments_set:
            raise ModelLoadError(f"edge {edge!r} references an undeclared moment")
        children[parent].append(child)

    def term(s: str) -> ProofTerm:
        try:
            return parse_term(s)
        except ParseError as e:
            raise ModelLoadError(f"bad term {s!r}: {e}") from None

    def formula(s: str) -> Formula:
        try:
            return parse_formula(s)
        except ParseError as e:
            raise ModelLoadError(f"bad formula {s!r}: {e}") from None

    choice = {}
    for m, by_agent in obj.get("choice", {}).items():
        for j, cells in by_agent.items():
            choice[(m, j)] = tuple(frozenset(cell) for cell in cells)
    act = {}
    for m, by_leaf in obj.get("act", {}).items():
        for h, ts in by_leaf.items():
            act[(m, h)] = frozenset(term(s) for s in ts)
    evidence = {}
    for m, by_term in obj.get("evidence", {}).items():
        for ts, fs in by_term.items():
            evidence[(m, term(ts))] = frozenset(formula(s) for s in fs)
    valuation = {}
    for atom, pairs in obj.get("valuation", {}).items():
        valuation[atom] = frozenset((m, h) for m, h in pairs)
    universe = None
    if "universe" in obj:
        universe = close_universe(
            [formula(s) for s in obj["universe"].get("formulas", [])],
            [term(s) for s in obj["universe"].get("terms", [])],
        )
    try:
        return Model(
            agents=agents,
            root=root,
            children={m: tuple(cs) for m, cs in children.items()},
            choice=choice,
            act=act,
            r_extra=[tuple(e) for e in obj.get("r_extra", [])],
            evidence_base=evidence,
            valuation=valuation,
            universe=universe,
            mode=obj.get("mode", "completed"),
        )
    except JstitError:
        raise
    except (TypeError, ValueError) as e:
        raise ModelLoadError(f"malformed model file: {e}") from None


# ---------------------------------------------------------------------------
# Validation

_BY_CONSTRUCTION_ALWAYS = (
    "constraint 1 (historical connection)",
    "constraint 2 (no backward branching)",
    "constraint 10 (future always matters)",
)


def _validate(model: Model) -> ViolationReport:
    out: list[Violation] = []
    _check_choice_undivided(model, out)
    _check_independence(model, out)
    if model.mode == "raw":
        _check_evidence_monotone(model, out)
        _check_evidence_closure(model, out)
    _check_act_expansion(model, out)
    _check_no_new_proofs(model, out)
    _check_act_undivided(model, out)
    _check_transparency(model, out)
    _check_normality(model, out)
    by_construction = _BY_CONSTRUCTION_ALWAYS
    if model.mode == "completed":
        by_construction += (
            "constraint 5 (monotonicity of evidence)",
            "constraint 6 (evidence closure properties)",
        )
    return ViolationReport(out, by_construction)


def _check_choice_undivided(model: Model, out: list[Violation]):
    # constraint 3: undivided histories are never separated by a choice
    for m in model.moments:
        for cls in model.undividedness_classes(m):
            for j in model.agents:
                cells = {model.choice_cell(m, j, h) for h in cls}
                if len(cells) > 1:
                    hs = sorted(cls)[:2]
                    out.append(Violation(
                        "constraint 3",
                        f"choice of {j!r} at {m!r} separates histories "
                        f"{hs[0]!r} and {hs[1]!r}, which are undivided at {m!r}",
                        {"moment": m, "agent": j, "histories": hs},
                    ))


def _check_independence(model: Model, out: list[Violation]):
    # constraint 4: any simultaneous selection of one cell per agent intersects
    for m in model.moments:
        partitions = [model.choice_partition(m, j) for j in model.agents]
        for selection in itertools.product(*partitions):
            joint = frozenset.intersection(*selection)
            if not joint:
                out.append(Violation(
                    "constraint 4",
                    f"at {m!r} the agents can select jointly unrealizable cells",
                    {"moment": m,
                     "selection": {j: sorted(cell) for j, cell
                                   in zip(model.agents, selection)}},
                ))
                break


def _check_evidence_monotone(model: Model, out: list[Violation]):
    # constraint 5 against the raw base, over universe terms
    base = model.evidence_base
    for t in model.universe.terms:
        for m, m2 in model.r_pairs:
            have_m = base.get((m, t), frozenset())
            have_m2 = base.get((m2, t), frozenset())
            missing = have_m - have_m2
            if missing:
                out.append(Violation(
                    "constraint 5",
                    f"evidence at ({m!r}) for a term is not carried to "
                    f"R-successor {m2!r}",
                    {"from": m, "to": m2, "term": t, "missing": missing},
                ))


def _check_evidence_closure(model: Model, out: list[Violation]):
    # constraint 6 against the raw base, restricted to the universe
    from .syntax import split_implication
    base = model.evidence_base

    def have(m, t):
        return base.get((m, t), frozenset())

    for m in model.moments:
        for t in model.universe.terms:
            if isinstance(t, App):
                for f in have(m, t.left):
                    ab = split_implication(f)
                    if ab is None:
                        continue
                    a, b = ab
                    if a in have(m, t.right) and b not in have(m, t):
                        out.append(Violation(
                            "constraint 6",
                            f"application closure fails at {m!r}: consequent "
                            f"missing from the evidence of the applied term",
                            {"moment": m, "term": t, "conclusion": b},
                        ))
            elif isinstance(t, Sum):
                union = have(m, t.left) | have(m, t.right)
                missing = union - have(m, t)
                if missing:
                    out.append(Violation(
                        "constraint 6",
                        f"sum closure fails at {m!r}: summand evidence missing",
                        {"moment": m, "term": t, "missing": missing},
                    ))
            elif isinstance(t, Bang):
                for a in have(m, t.inner):
                    want = Just(t.inner, a)
                    if want not in have(m, t):
                        out.append(Violation(
                            "constraint 6",
                            f"proof-checker closure fails at {m!r}",
                            {"moment": m, "term": t, "missing": want},
                        ))


def _check_act_expansion(model: Model, out: list[Violation]):
    # constraint 7: whiteboards only grow along a history
    for leaf in model.leaves:
        ms = model.path[leaf]
        for earlier, later in zip(ms, ms[1:]):
            lost = model.act_at(earlier, leaf) - model.act_at(later, leaf)
            if lost:
                out.append(Violation(
                    "constraint 7",
                    f"terms presented at {earlier!r} disappear at {later!r} "
                    f"on history {leaf!r}",
                    {"earlier": earlier, "later": later,
                     "history": leaf, "lost": lost},
                ))


def _check_no_new_proofs(model: Model, out: list[Violation]):
    # constraint 8: universally presented terms must stem from a predecessor
    for m in model.moments:
        shared = model.act_intersection(m)
        if not shared:
            continue
        earlier: set[ProofTerm] = set()
        for h in model.h_at[m]:
            for m2 in model.path[h]:
                if model.lt(m2, m):
                    earlier |= model.act_at(m2, h)
        fresh = shared - earlier
        if fresh:
            out.append(Violation(
                "constraint 8",
                f"terms appear on every history through {m!r} without any "
                f"earlier presentation",
                {"moment": m, "terms": fresh},
            ))


def _check_act_undivided(model: Model, out: list[Violation]):
    # constraint 9: histories undivided at m carry the same whiteboard at m
    # (an undividedness class of size >= 2 always shares a child of m)
    for m in model.moments:
        for cls in model.undividedness_classes(m):
            ordered = sorted(cls)
            first = ordered[0]
            for h in ordered[1:]:
                if model.act_at(m, h) != model.act_at(m, first):
                    out.append(Violation(
                        "constraint 9",
                        f"histories {first!r} and {h!r} are undivided at {m!r} "
                        f"but present different proofs there",
                        {"moment": m, "histories": [first, h]},
                    ))


def _check_transparency(model: Model, out: list[Violation]):
    # constraint 11: universally presented terms persist along R
    inter = {m: model.act_intersection(m) for m in model.moments}
    for m, m2 in model.r_pairs:
        leaked = inter[m] - inter[m2]
        if leaked:
            out.append(Violation(
                "constraint 11",
                f"terms universally presented at {m!r} are not universally "
                f"presented at R-successor {m2!r}",
                {"from": m, "to": m2, "terms": leaked},
            ))


def _check_normality(model: Model, out: list[Violation]):
    constants = [t for t in model.universe.terms if isinstance(t, Const)]
    if not constants:
        return
    agents = frozenset(model.agents)
    table = model.evidence_table
    required = [f for f in model.universe.formulas
                if is_normality_instance(f, agents)]
    for c in constants:
        for m in model.moments:
            have = table.get((m, c), frozenset())
            for f in required:
                if f not in have:
                    out.append(Violation(
                        "normality",
                        f"axiom-scheme instance missing from the evidence of "
                        f"constant {c.name!r} at {m!r}",
                        {"moment": m, "constant": c.name, "formula": f},
                    ))
