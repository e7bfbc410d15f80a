"""Single-node formula mutations for tamper-detection tests.

``tamperings(proof, agents, count)`` yields exactly ``count`` tampered
proofs, each differing from the original in one AST node of one line, and
each guaranteed to be a genuine tamper: either a later line depends on the
mutated one (so its exactly-determined shape check must fail), or the
mutated line itself no longer satisfies its own justification.
"""

from __future__ import annotations

from typing import Iterator

from jstit.proofkit import (
    AxiomJust,
    ConstSpecJust,
    MPJust,
    NecKJust,
    Proof,
    ProofLine,
    R4Just,
    proof_agents,
)
from jstit.schemes import match_scheme
from jstit.syntax import (
    And,
    Atom,
    Box,
    Const,
    Cstit,
    Formula,
    Just,
    Know,
    Not,
    Prove,
    Proven,
)

_CHILD_FIELDS = {
    Not: ("operand",),
    And: ("left", "right"),
    Box: ("operand",),
    Know: ("operand",),
    Proven: ("operand",),
    Cstit: ("operand",),
    Prove: ("operand",),
    Just: ("operand",),
}

FRESH_ATOMS = tuple(Atom(f"p99{k}") for k in range(8))
FRESH_AGENT = "zz"


def positions(f: Formula) -> list[tuple[int, ...]]:
    out = [()]
    fields = _CHILD_FIELDS.get(type(f), ())
    for k, name in enumerate(fields):
        for sub in positions(getattr(f, name)):
            out.append((k,) + sub)
    return out


def get_at(f: Formula, path: tuple[int, ...]) -> Formula:
    for k in path:
        f = getattr(f, _CHILD_FIELDS[type(f)][k])
    return f


def replace_at(f: Formula, path: tuple[int, ...], new: Formula) -> Formula:
    if not path:
        return new
    fields = _CHILD_FIELDS[type(f)]
    name = fields[path[0]]
    child = replace_at(getattr(f, name), path[1:], new)
    kwargs = {n: getattr(f, n) for n in f.__dataclass_fields__}
    kwargs[name] = child
    return type(f)(**kwargs)


def node_mutations(f: Formula) -> Iterator[Formula]:
    """Structurally distinct formulas differing from f at one node."""
    for path in positions(f):
        node = get_at(f, path)
        yield replace_at(f, path, Not(node))
        if isinstance(node, Not):
            yield replace_at(f, path, node.operand)
        if isinstance(node, And) and node.left != node.right:
            yield replace_at(f, path, And(node.right, node.left))
        if isinstance(node, Atom):
            for fresh in FRESH_ATOMS:
                if node != fresh:
                    yield replace_at(f, path, fresh)
        if isinstance(node, Cstit):
            yield replace_at(f, path, Cstit(FRESH_AGENT, node.operand))
        if isinstance(node, Prove):
            yield replace_at(f, path, Prove(FRESH_AGENT, node.operand))
        for fresh in FRESH_ATOMS:
            if node != fresh:
                yield replace_at(f, path, fresh)


def _referenced_later(proof: Proof, index: int) -> bool:
    target = index + 1  # 1-based
    for line in proof.lines[index + 1:]:
        j = line.justification
        if isinstance(j, MPJust) and target in (j.antecedent, j.implication):
            return True
        if isinstance(j, NecKJust) and j.premise == target:
            return True
        if isinstance(j, R4Just) and j.premise == target:
            return True
    return False


def _breaks_own_line(line: ProofLine, mutated: Formula, agent_set) -> bool:
    j = line.justification
    if isinstance(j, AxiomJust):
        return match_scheme(mutated, j.scheme, agent_set) is None
    if isinstance(j, ConstSpecJust):
        return not (isinstance(mutated, Just)
                    and mutated.term == Const(j.constant)
                    and match_scheme(mutated.operand, j.scheme, agent_set))
    # mp / neck / r4 conclusions are exactly determined by their parameters
    # and the cited lines, so any change to the formula breaks the line
    return True


def tamperings(proof: Proof, count: int, agents=None) -> list[Proof]:
    """Deterministic list of ``count`` genuinely proof-breaking tamperings."""
    agent_tuple = proof_agents(proof, agents)
    agent_set = frozenset(agent_tuple) if agent_tuple else None
    out: list[Proof] = []
    seen: set = set()
    for index, line in enumerate(proof.lines):
        for mutated in node_mutations(line.formula):
            if mutated == line.formula or (index, mutated) in seen:
                continue
            if not (_referenced_later(proof, index)
                    or _breaks_own_line(line, mutated, agent_set)):
                continue
            seen.add((index, mutated))
            lines = list(proof.lines)
            lines[index] = ProofLine(mutated, line.justification)
            out.append(Proof(tuple(lines), proof.agents))
            if len(out) >= count:
                return out
    raise AssertionError(f"only {len(out)} distinct tamperings available")
