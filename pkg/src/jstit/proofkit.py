"""Hilbert-style proof checking.

A proof is a finite sequence of lines, each a formula together with a
justification:

    axiom      instance of a named scheme (see ``jstit.schemes``)
    mp         modus ponens from two earlier lines
    neck       knowledge necessitation of an earlier line
    constspec  constant specification: c:A for A an instance of any of the
               schemes A0 through A13
    r4         from an earlier line  K A -> (~Proven(B_1) | ... | ~Proven(B_n))
               infer  K A -> (AND_j ~Prove(j, B_1) | ... | AND_j ~Prove(j, B_n))
               with the conjunctions running over the declared agent set

All comparisons are AST-level: pretty-printing differences never matter.
Canonical shapes are fixed once and for all: conjunctions left-associated,
disjunction chains right-nested, agent conjunctions in sorted agent order.

A refutation certificate for premises A_1, ..., A_n (n >= 1) is a proof
whose last line is ``(A_1 & ... & A_n) -> (p0 & ~p0)`` with the premise
conjunction left-associated in the given order.

Proof files are JSON: either a bare list of lines or an object
``{"agents": [...], "lines": [...]}``.  Each line is
``{"formula": <string>, "just": {"kind": ..., ...}}`` with 1-based line
references.  When no agent set is declared, the checker uses the agents
mentioned in the proof's formulas.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Union

from .schemes import SchemeId, match_scheme
from .syntax import (
    Const,
    Formula,
    JstitError,
    Just,
    Know,
    Not,
    ParseError,
    Prove,
    Proven,
    agents_of,
    conjoin,
    disjoin,
    implies,
    parse_formula,
    print_formula,
    FALSUM,
)


class ProofLoadError(JstitError):
    """Malformed proof file (bad JSON, bad formula grammar, bad references)."""


@dataclass(frozen=True)
class AxiomJust:
    scheme: SchemeId


@dataclass(frozen=True)
class MPJust:
    antecedent: int
    implication: int


@dataclass(frozen=True)
class NecKJust:
    premise: int


@dataclass(frozen=True)
class ConstSpecJust:
    constant: str
    scheme: SchemeId


@dataclass(frozen=True)
class R4Just:
    premise: int
    knowledge: Formula
    targets: tuple[Formula, ...]


Justification = Union[AxiomJust, MPJust, NecKJust, ConstSpecJust, R4Just]


@dataclass(frozen=True)
class ProofLine:
    formula: Formula
    justification: Justification


@dataclass(frozen=True)
class Proof:
    lines: tuple[ProofLine, ...]
    agents: Optional[tuple[str, ...]] = None

    @property
    def conclusion(self) -> Formula:
        return self.lines[-1].formula


@dataclass(frozen=True)
class RefutationCertificate:
    premises: tuple[Formula, ...]
    proof: Proof


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    line: Optional[int] = None
    check: str = ""
    expected: str = ""
    found: str = ""

    @property
    def message(self) -> str:
        if self.ok:
            return "ok"
        out = f"line {self.line}: {self.check} check failed"
        if self.expected:
            out += f"; expected {self.expected}"
        if self.found:
            out += f"; found {self.found}"
        return out


_OK = CheckResult(True)


def proof_agents(proof: Proof, agents=None) -> tuple[str, ...]:
    """Resolve the agent set: explicit argument, declared set, or inferred."""
    if agents is not None:
        return tuple(sorted(set(agents)))
    if proof.agents is not None:
        return tuple(sorted(set(proof.agents)))
    mentioned: set[str] = set()
    for line in proof.lines:
        mentioned |= agents_of(line.formula)
    return tuple(sorted(mentioned))


def r4_premise_shape(knowledge: Formula, targets: tuple[Formula, ...]) -> Formula:
    return implies(Know(knowledge),
                   disjoin([Not(Proven(b)) for b in targets]))


def r4_conclusion_shape(knowledge: Formula, targets: tuple[Formula, ...],
                        agents: tuple[str, ...]) -> Formula:
    blocks = [conjoin([Not(Prove(j, b)) for j in agents]) for b in targets]
    return implies(Know(knowledge), disjoin(blocks))


def check_proof(proof: Proof, agents=None) -> CheckResult:
    """Verify every line; the result names the first failing line, if any."""
    agent_tuple = proof_agents(proof, agents)
    agent_set = frozenset(agent_tuple) if agent_tuple else None
    for idx, line in enumerate(proof.lines, start=1):
        res = _check_line(proof, idx, line, agent_tuple, agent_set)
        if not res.ok:
            return res
    if not proof.lines:
        return CheckResult(False, 0, "structure", "at least one line", "empty proof")
    return _OK


def _refer(proof: Proof, idx: int, ref: int) -> Optional[Formula]:
    if not isinstance(ref, int) or not 1 <= ref < idx:
        return None
    return proof.lines[ref - 1].formula


def _check_line(proof, idx, line, agent_tuple, agent_set) -> CheckResult:
    f = line.formula
    j = line.justification
    if isinstance(j, AxiomJust):
        if match_scheme(f, j.scheme, agent_set) is None:
            return CheckResult(False, idx, "axiom",
                               f"an instance of {j.scheme.value}",
                               print_formula(f))
        return _OK
    if isinstance(j, MPJust):
        ante = _refer(proof, idx, j.antecedent)
        impl = _refer(proof, idx, j.implication)
        if ante is None or impl is None:
            return CheckResult(False, idx, "mp", "references to earlier lines",
                               f"({j.antecedent}, {j.implication})")
        if impl != implies(ante, f):
            return CheckResult(
                False, idx, "mp",
                f"line {j.implication} to be "
                f"{print_formula(implies(ante, f), resugar_implications=True)}",
                print_formula(impl, resugar_implications=True))
        return _OK
    if isinstance(j, NecKJust):
        prem = _refer(proof, idx, j.premise)
        if prem is None:
            return CheckResult(False, idx, "neck", "a reference to an earlier line",
                               str(j.premise))
        if f != Know(prem):
            return CheckResult(False, idx, "neck",
                               f"K applied to line {j.premise}", print_formula(f))
        return _OK
    if isinstance(j, ConstSpecJust):
        if not (isinstance(f, Just) and f.term == Const(j.constant)):
            return CheckResult(False, idx, "constspec",
                               f"a formula of the form {j.constant}:A",
                               print_formula(f))
        if match_scheme(f.operand, j.scheme, agent_set) is None:
            return CheckResult(False, idx, "constspec",
                               f"body to instantiate {j.scheme.value}",
                               print_formula(f.operand))
        return _OK
    if isinstance(j, R4Just):
        if not j.targets:
            return CheckResult(False, idx, "r4", "at least one target formula", "none")
        if not agent_tuple:
            return CheckResult(False, idx, "r4", "a nonempty agent set", "none")
        prem = _refer(proof, idx, j.premise)
        if prem is None:
            return CheckResult(False, idx, "r4", "a reference to an earlier line",
                               str(j.premise))
        want_prem = r4_premise_shape(j.knowledge, j.targets)
        if prem != want_prem:
            return CheckResult(False, idx, "r4",
                               print_formula(want_prem, resugar_implications=True),
                               print_formula(prem, resugar_implications=True))
        want = r4_conclusion_shape(j.knowledge, j.targets, agent_tuple)
        if f != want:
            return CheckResult(False, idx, "r4",
                               print_formula(want, resugar_implications=True),
                               print_formula(f, resugar_implications=True))
        return _OK
    return CheckResult(False, idx, "justification", "a known justification kind",
                       repr(j))


def check_refutation(cert: RefutationCertificate, agents=None) -> CheckResult:
    """check_proof plus conclusion-shape check for the premise implication."""
    if not cert.premises:
        return CheckResult(False, 0, "refutation", "at least one premise", "none")
    res = check_proof(cert.proof, agents)
    if not res.ok:
        return res
    want = implies(conjoin(list(cert.premises)), FALSUM)
    if cert.proof.conclusion != want:
        return CheckResult(False, len(cert.proof.lines), "refutation",
                           print_formula(want, resugar_implications=True),
                           print_formula(cert.proof.conclusion,
                                         resugar_implications=True))
    return _OK


# ---------------------------------------------------------------------------
# JSON (de)serialization

_SCHEME_BY_VALUE = {s.value: s for s in SchemeId}


def _formula(s: str) -> Formula:
    try:
        return parse_formula(s)
    except ParseError as e:
        raise ProofLoadError(f"bad formula {s!r}: {e}") from None


def _scheme(tag: str) -> SchemeId:
    try:
        return _SCHEME_BY_VALUE[tag]
    except KeyError:
        raise ProofLoadError(f"unknown scheme tag {tag!r}") from None


def _justification_from_dict(obj: dict) -> Justification:
    kind = obj.get("kind")
    try:
        if kind == "axiom":
            return AxiomJust(_scheme(obj["scheme"]))
        if kind == "mp":
            return MPJust(int(obj["antecedent"]), int(obj["implication"]))
        if kind == "neck":
            return NecKJust(int(obj["premise"]))
        if kind == "constspec":
            return ConstSpecJust(obj["constant"], _scheme(obj["scheme"]))
        if kind == "r4":
            return R4Just(int(obj["premise"]), _formula(obj["knowledge"]),
                          tuple(_formula(s) for s in obj["targets"]))
    except (KeyError, TypeError, ValueError) as e:
        raise ProofLoadError(f"malformed justification {obj!r}: {e}") from None
    raise ProofLoadError(f"unknown justification kind {kind!r}")


def proof_from_obj(obj) -> Proof:
    agents = None
    if isinstance(obj, dict):
        agents = tuple(obj.get("agents", ())) or None
        obj = obj.get("lines")
    if not isinstance(obj, list):
        raise ProofLoadError("proof file must be a JSON list of lines "
                             "or an object with a 'lines' field")
    lines = []
    for entry in obj:
        if not isinstance(entry, dict) or "formula" not in entry or "just" not in entry:
            raise ProofLoadError(f"malformed proof line {entry!r}")
        lines.append(ProofLine(_formula(entry["formula"]),
                               _justification_from_dict(entry["just"])))
    return Proof(tuple(lines), agents)


def load_proof(text: str) -> Proof:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ProofLoadError(f"bad JSON: {e}") from None
    return proof_from_obj(obj)


def load_proof_path(path) -> Proof:
    with open(path, "r", encoding="utf-8") as fh:
        return load_proof(fh.read())


def _justification_to_dict(j: Justification) -> dict:
    if isinstance(j, AxiomJust):
        return {"kind": "axiom", "scheme": j.scheme.value}
    if isinstance(j, MPJust):
        return {"kind": "mp", "antecedent": j.antecedent, "implication": j.implication}
    if isinstance(j, NecKJust):
        return {"kind": "neck", "premise": j.premise}
    if isinstance(j, ConstSpecJust):
        return {"kind": "constspec", "constant": j.constant, "scheme": j.scheme.value}
    if isinstance(j, R4Just):
        return {"kind": "r4", "premise": j.premise,
                "knowledge": print_formula(j.knowledge),
                "targets": [print_formula(b) for b in j.targets]}
    raise TypeError(f"unknown justification {j!r}")


def proof_to_obj(proof: Proof):
    lines = [{"formula": print_formula(line.formula),
              "just": _justification_to_dict(line.justification)}
             for line in proof.lines]
    if proof.agents is not None:
        return {"agents": list(proof.agents), "lines": lines}
    return lines


def refutation_from_obj(obj: dict) -> RefutationCertificate:
    if not isinstance(obj, dict) or "premises" not in obj or "proof" not in obj:
        raise ProofLoadError("refutation file needs 'premises' and 'proof' fields")
    return RefutationCertificate(
        tuple(_formula(s) for s in obj["premises"]),
        proof_from_obj(obj["proof"]),
    )


def load_refutation(text: str) -> RefutationCertificate:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ProofLoadError(f"bad JSON: {e}") from None
    return refutation_from_obj(obj)


def refutation_to_obj(cert: RefutationCertificate) -> dict:
    return {"premises": [print_formula(f) for f in cert.premises],
            "proof": proof_to_obj(cert.proof)}
