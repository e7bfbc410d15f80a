"""Bounded model exploration: enumeration, satisfiability search, fuzzing.

``enumerate_models`` streams every validated model, up to moment
relabeling, whose tree / choice / act / epistemic-relation / valuation fit
the given bounds.  Trees are enumerated as canonical rooted shapes (one
labeled representative per isomorphism class); decorations are enumerated
exhaustively on top, so the stream never omits a model class, though
decorations symmetric under a tree automorphism may appear more than once.
Act maps are generated constructively so that expansion (7), no new proofs
(8), whiteboard agreement on undivided histories (9) and epistemic
transparency (11) hold for every emitted candidate; the choice options are
pre-filtered for refinement of undividedness (3) and independence (4).

``find_satisfying`` searches that stream for a model of a formula.  Two
search-specific refinements, both satisfaction-preserving:

- evidence bases are enumerated over the query-relevant domain (terms of
  the query plus the act pool, against the formulas governed by t:A /
  Prove / Proven in the query), uniformly across moments.  This
  under-approximates the space of evidence functions; it does not affect
  formulas whose truth is evidence-independent.
- components the query's truth cannot depend on (e.g. choice partitions
  for a formula with no agentive operator) are fixed to their default
  values instead of enumerated.  Every skeleton admits the default
  completion, so exhaustiveness over the remaining components is
  preserved.

Everything here is deterministic: identical bounds and seeds produce
identical streams, search outcomes and reports.
"""

from __future__ import annotations

import itertools
import random
import string
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Optional, Union

from .checker import EvalPoint, Evaluator, valid_in_model
from .model import Model, Universe, close_universe
from .schemes import NORMALITY_GROUP, SchemeId, instantiate
from .syntax import (
    And,
    App,
    Atom,
    Bang,
    Box,
    Const,
    Cstit,
    Formula,
    JstitError,
    Just,
    Know,
    Not,
    ProofTerm,
    Prove,
    Proven,
    Sum,
    Var,
    agents_of,
    atoms,
    formula_terms,
    print_formula,
    print_term,
    subformulas,
)


@dataclass(frozen=True)
class Bounds:
    max_moments: int = 4
    max_branching: int = 3
    max_depth: int = 3
    agents: int = 2
    atom_set: tuple[str, ...] = ("p",)
    act_term_pool: tuple[ProofTerm, ...] = (Var("x"), Const("c"))
    r_mode: str = "all_preorders"  # or "minimal"

    def __post_init__(self):
        if min(self.max_moments, self.max_branching, self.max_depth,
               self.agents) < 1:
            raise ValueError("all bounds must be positive")
        if self.r_mode not in ("all_preorders", "minimal"):
            raise ValueError(f"unknown r_mode {self.r_mode!r}")


DEFAULT_BOUNDS = Bounds()
FUZZ_BOUNDS = Bounds(r_mode="minimal")


@dataclass(frozen=True)
class SearchStats:
    models_checked: int
    trees_checked: int
    elapsed_seconds: float


@dataclass(frozen=True)
class Found:
    model: Model
    point: EvalPoint
    stats: SearchStats


@dataclass(frozen=True)
class ExhaustedUnsat:
    stats: SearchStats


@dataclass(frozen=True)
class Aborted:
    budget: int
    stats: SearchStats


SearchOutcome = Union[Found, ExhaustedUnsat, Aborted]


# ---------------------------------------------------------------------------
# Canonical rooted tree shapes

def tree_shapes(max_moments: int, max_branching: int,
                max_depth: int) -> Iterator[tuple]:
    """Canonical shapes (nested sorted tuples), smallest trees first."""

    @lru_cache(maxsize=None)
    def shapes(n: int, depth: int) -> tuple:
        if n == 1:
            return ((),)
        if depth <= 0:
            return ()
        return tuple(forests(n - 1, max_branching, depth - 1, None))

    def forests(total: int, slots: int, depth: int, bound) -> list:
        if total == 0:
            return [()]
        if slots == 0:
            return []
        out = []
        cap = total if bound is None else min(total, bound[0])
        for size in range(cap, 0, -1):
            for shape in shapes(size, depth):
                key = (size, shape)
                if bound is not None and key > bound:
                    continue
                for rest in forests(total - size, slots - 1, depth, key):
                    out.append((shape,) + rest)
        return out

    for n in range(1, max_moments + 1):
        yield from shapes(n, max_depth)


def shape_children(shape: tuple) -> dict[str, tuple[str, ...]]:
    """Deterministic labeling of a shape with ids m0, m1, ... (preorder)."""
    children: dict[str, tuple[str, ...]] = {}
    counter = itertools.count()

    def build(sh) -> str:
        me = f"m{next(counter)}"
        children[me] = tuple(build(c) for c in sh)
        return me

    build(shape)
    return children


# ---------------------------------------------------------------------------
# Decoration enumeration on one skeleton

def set_partitions(items: tuple) -> list[list[list]]:
    """All partitions of items, in a fixed deterministic order."""
    if not items:
        return [[]]
    first, rest = items[0], items[1:]
    out = []
    for part in set_partitions(rest):
        for i in range(len(part)):
            out.append(part[:i] + [[first] + part[i]] + part[i + 1:])
        out.append([[first]] + part)
    return out


def _choice_options(skel: Model) -> list[list[dict]]:
    """Per-moment lists of choice dictionaries (constraints 3 and 4 built in).

    Each option is a dict {(m, agent): cells} with vacuous partitions left
    implicit; option lists start with the all-vacuous assignment.
    """
    per_moment = []
    for m in skel.moments:
        classes = skel.undividedness_classes(m)
        if len(classes) < 2:
            per_moment.append([{}])
            continue
        partitions = []
        for part in set_partitions(tuple(range(len(classes)))):
            cells = tuple(
                frozenset().union(*(classes[i] for i in block))
                for block in part
            )
            partitions.append(cells)
        # vacuous (single cell) first for a stable, small-first order
        partitions.sort(key=len)
        options = []
        for combo in itertools.product(partitions, repeat=len(skel.agents)):
            if not _independent(combo):
                continue
            entry = {}
            for agent, cells in zip(skel.agents, combo):
                if len(cells) > 1:
                    entry[(m, agent)] = cells
            options.append(entry)
        per_moment.append(options)
    return per_moment


def _independent(partitions) -> bool:
    for selection in itertools.product(*partitions):
        if not frozenset.intersection(*selection):
            return False
    return True


def _act_assignments(skel: Model, pool: tuple[ProofTerm, ...]) -> list[dict]:
    """All act maps over the pool satisfying constraints 7, 8 and 9.

    Values are assigned per undividedness class (9), grow along each
    history (7), and a term shared by all histories through a moment must
    already occur below it (8).
    """
    if not pool:
        return [{}]
    assignments: list[dict] = []
    moments = skel.moments  # BFS order: parents come first

    def rec(i: int, acc: dict):
        if i == len(moments):
            assignments.append({k: v for k, v in acc.items() if v})
            return
        m = moments[i]
        parent = skel.parent[m]
        classes = skel.undividedness_classes(m)
        baselines = []
        for cls in classes:
            h0 = min(cls)
            baselines.append(acc[(parent, h0)] if parent else frozenset())
        earlier = frozenset().union(
            *(acc[(parent, h)] for h in skel.h_at[m])) if parent else frozenset()
        extra_choices = []
        for base in baselines:
            free = [t for t in pool if t not in base]
            extra_choices.append([
                frozenset(combo)
                for size in range(len(free) + 1)
                for combo in itertools.combinations(free, size)
            ])
        for extras in itertools.product(*extra_choices):
            values = [base | extra for base, extra in zip(baselines, extras)]
            shared = frozenset.intersection(*values)
            if not shared <= earlier:
                continue
            for cls, value in zip(classes, values):
                for h in cls:
                    acc[(m, h)] = value
            rec(i + 1, acc)
        for cls in classes:
            for h in cls:
                acc.pop((m, h), None)

    rec(0, {})
    return assignments


def _transitive(rel: frozenset, moments) -> bool:
    for a, b in rel:
        for c in moments:
            if (b, c) in rel and (a, c) not in rel:
                return False
    return True


def _preorders(skel: Model) -> list[frozenset]:
    """All preorders containing the temporal order, minimal first."""
    base = skel.r_pairs
    moments = skel.moments
    candidates = [(a, b) for a in moments for b in moments
                  if (a, b) not in base]
    out = []
    for bits in range(2 ** len(candidates)):
        extra = frozenset(candidates[k] for k in range(len(candidates))
                          if bits >> k & 1)
        rel = base | extra
        if _transitive(rel, moments):
            out.append(rel)
    return out


def _valuation_options(skel: Model, atom_names: tuple[str, ...]) -> Iterator[dict]:
    pairs = [(m, h) for m in skel.moments for h in sorted(skel.h_at[m])]
    masks = range(2 ** len(pairs) - 1, -1, -1)  # everything-true first

    def assignment(mask):
        return frozenset(p for k, p in enumerate(pairs) if mask >> k & 1)

    for combo in itertools.product(masks, repeat=len(atom_names)):
        yield {a: assignment(mask) for a, mask in zip(atom_names, combo)}


def _evidence_options(domain_pairs: list, moments) -> Iterator[dict]:
    """Uniform evidence bases: chosen (term, formula) pairs hold everywhere."""
    n = len(domain_pairs)
    order = sorted(range(2 ** n), key=lambda mask: (bin(mask).count("1"), mask))
    for mask in order:
        chosen = [domain_pairs[k] for k in range(n) if mask >> k & 1]
        base: dict = {}
        for t, a in chosen:
            for m in moments:
                base.setdefault((m, t), set()).add(a)
        yield {k: frozenset(v) for k, v in base.items()}


@dataclass(frozen=True)
class _Needs:
    choice: bool = True
    act: bool = True
    evidence: bool = True
    r: bool = True
    valuation: bool = True


def formula_needs(f: Formula) -> _Needs:
    """Which model components the truth of f can depend on."""
    kinds = {type(g) for g in subformulas(f)}
    has_prove = Prove in kinds
    has_proven = Proven in kinds
    has_just = Just in kinds
    return _Needs(
        choice=Cstit in kinds or has_prove,
        act=has_prove or has_proven,
        evidence=has_just or has_prove or has_proven,
        r=Know in kinds or has_just or has_prove or has_proven,
        valuation=Atom in kinds,
    )


_ALL_NEEDS = _Needs()


def _agent_names(count: int, mentioned=()) -> tuple[str, ...]:
    names = list(dict.fromkeys(sorted(mentioned)))
    for letter in string.ascii_lowercase:
        if len(names) >= count:
            break
        if letter not in names:
            names.append(letter)
    if len(names) > count:
        raise JstitError(
            f"formula mentions {len(names)} agents but bounds allow {count}")
    return tuple(sorted(names))


def _iter_models(bounds: Bounds, agent_names: tuple[str, ...],
                 evidence_domain: Optional[list],
                 universe: Optional[Universe],
                 needs: _Needs) -> Iterator[tuple[int, Model]]:
    """Yields (tree_index, model) over the bounded space, canonical order."""
    ev_domain = evidence_domain or []
    for tree_index, shape in enumerate(
            tree_shapes(bounds.max_moments, bounds.max_branching,
                        bounds.max_depth)):
        children = shape_children(shape)
        skel = Model(agent_names, "m0", children, universe=universe)
        full_universe = skel.universe  # covers the domain plus nothing else
        choice_lists = (_choice_options(skel) if needs.choice
                        else [[{}] for _ in skel.moments])
        acts = _act_assignments(skel, bounds.act_term_pool) if needs.act else [{}]
        base_pairs = skel.r_pairs
        if needs.r and bounds.r_mode == "all_preorders":
            relations = [
                (rel, {m: tuple(m2 for m2 in skel.moments if (m, m2) in rel)
                       for m in skel.moments},
                 rel - base_pairs)
                for rel in _preorders(skel)
            ]
        else:
            relations = [(base_pairs, skel.r_succ, frozenset())]
        evidences = (list(_evidence_options(ev_domain, skel.moments))
                     if needs.evidence else [{}])
        valuations = (list(_valuation_options(skel, bounds.atom_set))
                      if needs.valuation else [{}])
        for choice_combo in itertools.product(*choice_lists):
            choice: dict = {}
            for entry in choice_combo:
                choice.update(entry)
            cell_of = {
                (m, j, h): cell
                for (m, j), cells in choice.items()
                for cell in cells
                for h in cell
            }
            for act in acts:
                inter = {m: _shared_terms(skel, act, m) for m in skel.moments}
                for rel, r_succ, r_extra in relations:
                    if not all(inter[a] <= inter[b] for a, b in rel):
                        continue  # constraint 11
                    for evidence in evidences:
                        for valuation in valuations:
                            yield tree_index, Model._from_skeleton(
                                skel, choice, cell_of, act, rel, r_succ,
                                r_extra, evidence, valuation, full_universe,
                            )


def _shared_terms(skel: Model, act: dict, m: str) -> frozenset:
    out = None
    for h in skel.h_at[m]:
        cur = act.get((m, h), frozenset())
        out = cur if out is None else out & cur
        if not out:
            return frozenset()
    return out


def enumerate_models(bounds: Bounds = DEFAULT_BOUNDS,
                     evidence_domain: Optional[list] = None) -> Iterator[Model]:
    """Every validated model within the bounds, up to moment relabeling.

    ``evidence_domain`` optionally lists (term, formula) pairs; evidence
    bases then range over the uniform assignments built from them.  Without
    it the evidence base is empty (the closure still adds normality
    instances at constants).
    """
    agent_names = _agent_names(bounds.agents)
    universe = _domain_universe(bounds, evidence_domain, extra_formulas=())
    for _, model in _iter_models(bounds, agent_names, evidence_domain,
                                 universe, _ALL_NEEDS):
        yield model


def _domain_universe(bounds: Bounds, evidence_domain, extra_formulas) -> Universe:
    formulas = set(extra_formulas)
    formulas.update(Atom(a) for a in bounds.atom_set)
    terms = set(bounds.act_term_pool)
    for t, a in evidence_domain or []:
        formulas.add(a)
        terms.add(t)
    return close_universe(formulas, terms)


def query_evidence_domain(f: Formula, bounds: Bounds) -> list:
    """(term, formula) pairs relevant to f: query terms + pool, against the
    formulas governed by a t:A, Prove or Proven in f."""
    terms = sorted(set(bounds.act_term_pool) | formula_terms(f), key=print_term)
    governed = sorted(
        {g.operand for g in subformulas(f) if isinstance(g, (Just, Prove, Proven))},
        key=print_formula)
    return [(t, a) for t in terms for a in governed]


def find_satisfying(f: Formula, bounds: Bounds = DEFAULT_BOUNDS,
                    budget: Optional[int] = None,
                    project: bool = True) -> SearchOutcome:
    """First model and point satisfying f within the bounds, canonical order.

    ``ExhaustedUnsat`` means no model of the enumerated family satisfies f
    at any point.  ``budget`` caps the number of candidate models evaluated
    (a deterministic count, not wall time).
    """
    started = time.perf_counter()
    mentioned = agents_of(f)
    agent_names = _agent_names(bounds.agents, mentioned)
    query_atoms = atoms(f)
    if not set(bounds.atom_set) >= query_atoms:
        bounds = Bounds(
            max_moments=bounds.max_moments,
            max_branching=bounds.max_branching,
            max_depth=bounds.max_depth,
            agents=bounds.agents,
            atom_set=tuple(sorted(set(bounds.atom_set) | query_atoms)),
            act_term_pool=bounds.act_term_pool,
            r_mode=bounds.r_mode,
        )
    evidence_domain = query_evidence_domain(f, bounds)
    universe = _domain_universe(bounds, evidence_domain, extra_formulas=[f])
    needs = formula_needs(f) if project else _ALL_NEEDS
    checked = 0
    trees = 0
    for tree_index, model in _iter_models(bounds, agent_names,
                                          evidence_domain if needs.evidence else None,
                                          universe, needs):
        trees = max(trees, tree_index + 1)
        if budget is not None and checked >= budget:
            return Aborted(budget, SearchStats(
                checked, trees, time.perf_counter() - started))
        checked += 1
        ev = Evaluator(model, check=False)
        for m in model.moments:
            for h in sorted(model.h_at[m]):
                if ev.at(m, h, f):
                    return Found(model, EvalPoint(m, h), SearchStats(
                        checked, trees, time.perf_counter() - started))
    return ExhaustedUnsat(SearchStats(
        checked, trees, time.perf_counter() - started))


# ---------------------------------------------------------------------------
# Random normal models

def _sample_tree(rng: random.Random, bounds: Bounds) -> dict:
    n = rng.randint(1, bounds.max_moments)
    children: dict[str, list[str]] = {"m0": []}
    depth = {"m0": 0}
    for i in range(1, n):
        candidates = [m for m in children
                      if len(children[m]) < bounds.max_branching
                      and depth[m] < bounds.max_depth]
        parent = rng.choice(sorted(candidates))
        node = f"m{i}"
        children[parent].append(node)
        children[node] = []
        depth[node] = depth[parent] + 1
    return {m: tuple(cs) for m, cs in children.items()}


def _sample_choice(rng: random.Random, skel: Model) -> dict:
    choice: dict = {}
    for m in skel.moments:
        classes = skel.undividedness_classes(m)
        if len(classes) < 2:
            continue
        options = set_partitions(tuple(range(len(classes))))
        picked = []
        for _ in skel.agents:
            if rng.random() < 0.5:
                picked.append(None)  # vacuous
                continue
            part = rng.choice(options)
            picked.append(tuple(
                frozenset().union(*(classes[i] for i in block))
                for block in part))
        concrete = [p if p is not None else (skel.h_at[m],) for p in picked]
        if not _independent(concrete):
            # fall back: keep the first nontrivial partition, all others vacuous
            keep = next((k for k, p in enumerate(picked)
                         if p is not None and len(p) > 1), None)
            picked = [p if k == keep else None for k, p in enumerate(picked)]
        for agent, cells in zip(skel.agents, picked):
            if cells is not None and len(cells) > 1:
                choice[(m, agent)] = cells
    return choice


def _sample_act(rng: random.Random, skel: Model, pool, relax: frozenset) -> dict:
    acc: dict = {}
    for m in skel.moments:
        parent = skel.parent[m]
        classes = skel.undividedness_classes(m)
        units = ([frozenset({h}) for h in sorted(skel.h_at[m])]
                 if "9" in relax else list(classes))
        earlier = (frozenset().union(*(acc[(parent, h)] for h in skel.h_at[m]))
                   if parent else frozenset())
        values = []
        for unit in units:
            h0 = min(unit)
            base = acc[(parent, h0)] if parent else frozenset()
            extra = frozenset(t for t in pool
                              if t not in base and rng.random() < 0.35)
            values.append(base | extra)
        shared_fresh = frozenset.intersection(*values) - earlier
        if shared_fresh:
            values[0] = values[0] - shared_fresh  # restore constraint 8
        for unit, value in zip(units, values):
            for h in unit:
                acc[(m, h)] = value
    return {k: v for k, v in acc.items() if v}


def _sample_r_extra(rng: random.Random, skel: Model, act: dict,
                    bounds: Bounds, relax: frozenset) -> frozenset:
    if bounds.r_mode != "all_preorders" and not relax:
        return frozenset()
    inter = {m: _shared_terms(skel, act, m) for m in skel.moments}
    base = skel.r_pairs
    chosen: set = set()
    candidates = [(a, b) for a in skel.moments for b in skel.moments
                  if (a, b) not in base]
    for pair in candidates:
        if rng.random() >= 0.25:
            continue
        trial = set(chosen)
        trial.add(pair)
        # transitive closure of base + trial
        rel = set(base) | trial
        changed = True
        while changed:
            changed = False
            add = {(a, c) for a, b in rel for b2, c in rel if b == b2} - rel
            if add:
                rel |= add
                changed = True
        if "11" in relax or all(inter[a] <= inter[b] for a, b in rel):
            chosen = trial
    return frozenset(chosen)


def _sample_evidence(rng: random.Random, skel: Model, bounds: Bounds) -> dict:
    base: dict = {}
    for _ in range(rng.randint(0, 3)):
        m = rng.choice(skel.moments)
        t = rng.choice(sorted(bounds.act_term_pool, key=print_term))
        a = Atom(rng.choice(sorted(bounds.atom_set)))
        base.setdefault((m, t), set()).add(a)
    return {k: frozenset(v) for k, v in base.items()}


def random_normal_model(seed: int, bounds: Bounds = FUZZ_BOUNDS,
                        relax: frozenset = frozenset()) -> Model:
    """Deterministic-in-seed random model satisfying every constraint.

    ``relax`` names constraints ("9", "11") whose enforcement is skipped;
    this exists as a test hook for demonstrating that the soundness fuzzer
    catches bad models, and such models generally fail ``validate``.
    """
    rng = random.Random(f"jstit-model-{seed}")
    last = None
    for _ in range(32):
        children = _sample_tree(rng, bounds)
        agent_names = _agent_names(bounds.agents)
        skel = Model(agent_names, "m0", children)
        choice = _sample_choice(rng, skel)
        act = _sample_act(rng, skel, bounds.act_term_pool, relax)
        r_extra = _sample_r_extra(rng, skel, act, bounds, relax)
        valuation = {
            a: frozenset((m, h) for m in skel.moments
                         for h in sorted(skel.h_at[m]) if rng.random() < 0.5)
            for a in bounds.atom_set
        }
        model = Model(
            agents=agent_names, root="m0", children=children, choice=choice,
            act=act, r_extra=r_extra,
            evidence_base=_sample_evidence(rng, skel, bounds),
            valuation=valuation, mode="completed",
        )
        last = model
        if relax or model.validate().ok:
            return model
    raise JstitError(f"random model generation failed to validate: "
                     f"{last.validate().violations[:1]}")


# ---------------------------------------------------------------------------
# Random formulas and scheme instances

def random_term(rng: random.Random, depth: int = 1) -> ProofTerm:
    leaves = [Var("x"), Var("y"), Const("c")]
    if depth <= 0:
        return rng.choice(leaves)
    kind = rng.randrange(5)
    if kind == 0:
        return Sum(random_term(rng, depth - 1), random_term(rng, depth - 1))
    if kind == 1:
        return App(random_term(rng, depth - 1), random_term(rng, depth - 1))
    if kind == 2:
        return Bang(random_term(rng, depth - 1))
    return rng.choice(leaves)


def random_formula(rng: random.Random, agents, atom_names,
                   depth: int = 2) -> Formula:
    if depth <= 0 or rng.random() < 0.3:
        return Atom(rng.choice(sorted(atom_names)))
    kind = rng.randrange(8)
    sub = lambda: random_formula(rng, agents, atom_names, depth - 1)
    if kind == 0:
        return Not(sub())
    if kind == 1:
        return And(sub(), sub())
    if kind == 2:
        return Box(sub())
    if kind == 3:
        return Know(sub())
    if kind == 4:
        return Cstit(rng.choice(sorted(agents)), sub())
    if kind == 5:
        return Just(random_term(rng, 1), sub())
    if kind == 6:
        return Prove(rng.choice(sorted(agents)), sub())
    return Proven(sub())


def random_md_formula(rng: random.Random, agents, atom_names,
                      depth: int = 2) -> Formula:
    """Random Boolean combination of box/K/t:A/Proven formulas."""
    if depth > 0 and rng.random() < 0.4:
        if rng.random() < 0.5:
            return Not(random_md_formula(rng, agents, atom_names, depth - 1))
        return And(random_md_formula(rng, agents, atom_names, depth - 1),
                   random_md_formula(rng, agents, atom_names, depth - 1))
    body = random_formula(rng, agents, atom_names, 1)
    kind = rng.randrange(4)
    if kind == 0:
        return Box(body)
    if kind == 1:
        return Know(body)
    if kind == 2:
        return Just(random_term(rng, 1), body)
    return Proven(body)


def random_scheme_instance(rng: random.Random, scheme: SchemeId, agents,
                           atom_names) -> Formula:
    agents = tuple(sorted(agents))
    sub = lambda: random_formula(rng, agents, atom_names, depth=rng.randint(0, 2))
    if scheme is SchemeId.A3:
        n = rng.randint(1, min(2, len(agents)))
        js = rng.sample(agents, n)
        bindings = {"n": n}
        for k, j in enumerate(js, start=1):
            bindings[f"j{k}"] = j
            bindings[f"A{k}"] = sub()
        return instantiate(scheme, bindings)
    if scheme is SchemeId.A12:
        n = rng.randint(1, 2)
        bindings = {"n": n}
        for k in range(1, n + 1):
            bindings[f"j{k}"] = rng.choice(agents)
            bindings[f"A{k}"] = sub()
        return instantiate(scheme, bindings)
    if scheme is SchemeId.A13:
        return instantiate(scheme, {"j": rng.choice(agents), "A": sub()},
                           frozenset(agents))
    bindings = {"A": sub(), "B": sub(), "C": sub(),
                "s": random_term(rng, 1), "t": random_term(rng, 1),
                "i": rng.choice(agents), "j": rng.choice(agents)}
    return instantiate(scheme, bindings)


# ---------------------------------------------------------------------------
# Soundness fuzzing

@dataclass
class Counterexample:
    model: Model
    formula: Formula
    scheme: SchemeId


@dataclass
class FuzzReport:
    iterations: int
    counterexamples: list[Counterexample]
    scheme_counts: dict[str, int]
    elapsed_seconds: float
    relaxed: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def to_dict(self) -> dict:
        return {
            "iterations": self.iterations,
            "elapsed_seconds": round(self.elapsed_seconds, 3),
            "scheme_counts": dict(sorted(self.scheme_counts.items())),
            "relaxed_constraints": list(self.relaxed),
            "counterexamples": [
                {
                    "scheme": c.scheme.value,
                    "formula": print_formula(c.formula,
                                             resugar_implications=True),
                    "model": c.model.to_dict(),
                }
                for c in self.counterexamples
            ],
        }


def soundness_fuzz(seed: int, iterations: int,
                   bounds: Bounds = FUZZ_BOUNDS,
                   relax: frozenset = frozenset()) -> FuzzReport:
    """Assert A1-A13 instances on fresh random normal models.

    A counterexample indicates an implementation bug (or, with ``relax``,
    a deliberately broken model); the report carries the model and the
    failing instance.
    """
    started = time.perf_counter()
    rng = random.Random(f"jstit-fuzz-{seed}")
    counterexamples: list[Counterexample] = []
    scheme_counts: dict[str, int] = {}
    for _ in range(iterations):
        model_seed = rng.randrange(2 ** 32)
        model = random_normal_model(model_seed, bounds, relax)
        scheme = rng.choice(NORMALITY_GROUP)
        scheme_counts[scheme.value] = scheme_counts.get(scheme.value, 0) + 1
        instance = random_scheme_instance(rng, scheme, model.agents,
                                          bounds.atom_set)
        if not valid_in_model(model, instance, check=False):
            counterexamples.append(Counterexample(model, instance, scheme))
    return FuzzReport(iterations, counterexamples, scheme_counts,
                      time.perf_counter() - started, tuple(sorted(relax)))


def nontheorem_witness() -> Model:
    """A validated model on which x:p fails everywhere.

    The evidence base is empty at the proof variable x, so x:p is false at
    every moment regardless of the valuation (which makes p, and hence K p,
    true, showing the failure is due to the evidence alone).
    """
    return Model(
        agents=("a",),
        root="m0",
        children={"m0": ()},
        valuation={"p": frozenset({("m0", "m0")})},
        universe=close_universe([Just(Var("x"), Atom("p"))], [Var("x")]),
        mode="completed",
    )
