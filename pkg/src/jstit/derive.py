"""Proof-building combinators.

This module is a convenience layer for assembling Hilbert proofs out of
primitive lines; it is *not* part of the trusted core.  Everything built
here is an ordinary ``proofkit.Proof`` and passes through ``check_proof``
like any hand-written proof.

The combinators return 1-based line numbers.  Lines are deduplicated: a
formula derived twice keeps its first line number, which keeps derived
proofs reasonably short.

The higher-level helpers expand the usual derived machinery into primitive
lines: hypothetical syllogism, double negation, contraposition, conjunction
introduction/projection, necessitation and monotonicity for the box, the
knowledge and the agentive modalities, and ex falso.
"""

from __future__ import annotations

from .proofkit import (
    AxiomJust,
    ConstSpecJust,
    MPJust,
    NecKJust,
    Proof,
    ProofLine,
    R4Just,
    RefutationCertificate,
    r4_conclusion_shape,
    r4_premise_shape,
)
from .schemes import SchemeId, match_scheme
from .syntax import (
    And,
    Box,
    Const,
    Cstit,
    Formula,
    Just,
    Know,
    Not,
    conjoin,
    implies,
    split_implication,
    FALSUM,
)


class DerivationError(Exception):
    pass


class Derivation:
    def __init__(self, agents=()):
        self.agents = tuple(sorted(set(agents)))
        self._lines: list[ProofLine] = []
        self._index: dict[Formula, int] = {}

    def to_proof(self) -> Proof:
        return Proof(tuple(self._lines), self.agents or None)

    def formula(self, line: int) -> Formula:
        return self._lines[line - 1].formula

    def _add(self, f: Formula, just) -> int:
        if f in self._index:
            return self._index[f]
        self._lines.append(ProofLine(f, just))
        n = len(self._lines)
        self._index[f] = n
        return n

    # --- primitive line kinds

    def axiom(self, scheme: SchemeId, f: Formula) -> int:
        if match_scheme(f, scheme, frozenset(self.agents) or None) is None:
            raise DerivationError(
                f"{f!r} is not an instance of {scheme.value}")
        return self._add(f, AxiomJust(scheme))

    def mp(self, antecedent: int, implication: int) -> int:
        ab = split_implication(self.formula(implication))
        if ab is None or ab[0] != self.formula(antecedent):
            raise DerivationError("modus ponens lines do not fit")
        return self._add(ab[1], MPJust(antecedent, implication))

    def neck(self, premise: int) -> int:
        return self._add(Know(self.formula(premise)), NecKJust(premise))

    def constspec(self, constant: str, scheme: SchemeId, body: Formula) -> int:
        if match_scheme(body, scheme, frozenset(self.agents) or None) is None:
            raise DerivationError(f"{body!r} is not an instance of {scheme.value}")
        return self._add(Just(Const(constant), body),
                         ConstSpecJust(constant, scheme))

    def r4(self, premise: int, knowledge: Formula, targets) -> int:
        targets = tuple(targets)
        if self.formula(premise) != r4_premise_shape(knowledge, targets):
            raise DerivationError("r4 premise line has the wrong shape")
        if not self.agents:
            raise DerivationError("r4 needs a declared agent set")
        return self._add(r4_conclusion_shape(knowledge, targets, self.agents),
                         R4Just(premise, knowledge, targets))

    # --- propositional layer (A0 basis)

    def p1(self, a: Formula, b: Formula) -> int:
        return self.axiom(SchemeId.A0_P1, implies(a, implies(b, a)))

    def p2(self, a: Formula, b: Formula, c: Formula) -> int:
        return self.axiom(SchemeId.A0_P2, implies(
            implies(a, implies(b, c)),
            implies(implies(a, b), implies(a, c))))

    def p3(self, a: Formula, b: Formula) -> int:
        return self.axiom(SchemeId.A0_P3, implies(
            implies(Not(b), Not(a)), implies(a, b)))

    def c1(self, a: Formula, b: Formula) -> int:
        return self.axiom(SchemeId.A0_C1, implies(And(a, b), a))

    def c2(self, a: Formula, b: Formula) -> int:
        return self.axiom(SchemeId.A0_C2, implies(And(a, b), b))

    def c3(self, a: Formula, b: Formula) -> int:
        return self.axiom(SchemeId.A0_C3, implies(a, implies(b, And(a, b))))

    def _impl_parts(self, line: int) -> tuple[Formula, Formula]:
        ab = split_implication(self.formula(line))
        if ab is None:
            raise DerivationError(f"line {line} is not an implication")
        return ab

    def lift(self, line: int, x: Formula) -> int:
        """From F conclude X -> F."""
        f = self.formula(line)
        k = self.p1(f, x)
        return self.mp(line, k)

    def hs(self, first: int, second: int) -> int:
        """Hypothetical syllogism: from A -> B and B -> C conclude A -> C."""
        a, b = self._impl_parts(first)
        b2, c = self._impl_parts(second)
        if b != b2:
            raise DerivationError("syllogism lines do not compose")
        lifted = self.lift(second, a)           # A -> (B -> C)
        dist = self.p2(a, b, c)                 # (A->(B->C)) -> ((A->B)->(A->C))
        step = self.mp(lifted, dist)            # (A->B) -> (A->C)
        return self.mp(first, step)

    def identity(self, a: Formula) -> int:
        """A -> A."""
        k1 = self.p1(a, a)
        k2 = self.p1(a, implies(a, a))
        k3 = self.p2(a, implies(a, a), a)
        k4 = self.mp(k2, k3)
        return self.mp(k1, k4)

    def contract(self, line: int) -> int:
        """From X -> (X -> Y) conclude X -> Y."""
        x, rest = self._impl_parts(line)
        x2, y = split_implication(rest)
        if x2 != x:
            raise DerivationError("contraction needs X -> (X -> Y)")
        dist = self.p2(x, x, y)
        step = self.mp(line, dist)              # (X->X) -> (X->Y)
        return self.mp(self.identity(x), step)

    def mp_under(self, impl_line: int, arg_line: int) -> int:
        """From X -> (A -> B) and X -> A conclude X -> B."""
        x, rest = self._impl_parts(impl_line)
        a, b = split_implication(rest)
        x2, a2 = self._impl_parts(arg_line)
        if x2 != x or a2 != a:
            raise DerivationError("mp_under lines do not fit")
        dist = self.p2(x, a, b)
        step = self.mp(impl_line, dist)
        return self.mp(arg_line, step)

    def dne(self, a: Formula) -> int:
        """~~A -> A."""
        nna = Not(Not(a))
        l1 = self.p1(nna, Not(Not(nna)))        # ~~A -> (~~~~A -> ~~A)
        l2 = self.p3(Not(a), Not(nna))          # (~~~~A -> ~~A) -> (~A -> ~~~A)
        l3 = self.hs(l1, l2)                    # ~~A -> (~A -> ~~~A)
        l4 = self.p3(nna, a)                    # (~A -> ~~~A) -> (~~A -> A)
        l5 = self.hs(l3, l4)                    # ~~A -> (~~A -> A)
        return self.contract(l5)

    def dni(self, a: Formula) -> int:
        """A -> ~~A."""
        l1 = self.dne(Not(a))                   # ~~~A -> ~A
        l2 = self.p3(a, Not(Not(a)))            # (~~~A -> ~A) -> (A -> ~~A)
        return self.mp(l1, l2)

    def contrapose(self, line: int) -> int:
        """From X -> Y conclude ~Y -> ~X."""
        x, y = self._impl_parts(line)
        l1 = self.hs(self.dne(x), line)         # ~~X -> Y
        l2 = self.hs(l1, self.dni(y))           # ~~X -> ~~Y
        l3 = self.p3(Not(y), Not(x))            # (~~X -> ~~Y) -> (~Y -> ~X)
        return self.mp(l2, l3)

    def compose_and(self, left_line: int, right_line: int) -> int:
        """From X -> A and X -> B conclude X -> (A & B)."""
        x, a = self._impl_parts(left_line)
        x2, b = self._impl_parts(right_line)
        if x2 != x:
            raise DerivationError("conjunction composition needs a shared antecedent")
        pair = self.c3(a, b)                    # A -> (B -> (A & B))
        step = self.hs(left_line, pair)         # X -> (B -> (A & B))
        return self.mp_under(step, right_line)

    def pair_mono(self, left_line: int, right_line: int) -> int:
        """From X -> X' and Y -> Y' conclude (X & Y) -> (X' & Y')."""
        x, x1 = self._impl_parts(left_line)
        y, y1 = self._impl_parts(right_line)
        a = self.hs(self.c1(x, y), left_line)   # (X & Y) -> X'
        b = self.hs(self.c2(x, y), right_line)  # (X & Y) -> Y'
        return self.compose_and(a, b)

    def import_conj(self, line: int) -> int:
        """From X -> (Y -> Z) conclude (X & Y) -> Z."""
        x, rest = self._impl_parts(line)
        y, z = split_implication(rest)
        a = self.hs(self.c1(x, y), line)        # (X & Y) -> (Y -> Z)
        return self.mp_under(a, self.c2(x, y))

    def efq(self, a: Formula, target: Formula) -> int:
        """(A & ~A) -> target."""
        contradiction = And(a, Not(a))
        pos = self.c1(a, Not(a))                # (A & ~A) -> A
        neg = self.c2(a, Not(a))                # (A & ~A) -> ~A
        weak = self.p1(Not(a), Not(target))     # ~A -> (~target -> ~A)
        l1 = self.hs(neg, weak)                 # (A & ~A) -> (~target -> ~A)
        flip = self.p3(a, target)               # (~target -> ~A) -> (A -> target)
        l2 = self.hs(l1, flip)                  # (A & ~A) -> (A -> target)
        return self.mp_under(l2, pos)

    def project(self, line: int, index: int, total: int) -> int:
        """From X -> (C_1 & ... & C_total) (left-assoc) conclude X -> C_index."""
        out = line
        for step in range(total - 1, 0, -1):
            x, body = self._impl_parts(out)
            if not isinstance(body, And):
                raise DerivationError("projection target is not a conjunction")
            if index == step + 1:
                return self.hs(out, self.c2(body.left, body.right))
            out = self.hs(out, self.c1(body.left, body.right))
        return out

    # --- modal layer

    def know_mono(self, line: int) -> int:
        """From A -> B conclude K A -> K B."""
        a, b = self._impl_parts(line)
        nec = self.neck(line)
        dist = self.axiom(SchemeId.A7_K, implies(
            Know(implies(a, b)), implies(Know(a), Know(b))))
        return self.mp(nec, dist)

    def box_nec(self, line: int) -> int:
        """From A conclude box A (derived: R2, A8, T for box, T for K)."""
        a = self.formula(line)
        ka = self.neck(line)
        up = self.axiom(SchemeId.A8, implies(Know(a), Box(Know(Box(a)))))
        bkba = self.mp(ka, up)                  # box K box A
        t_box = self.axiom(SchemeId.A1_BOX_T,
                           implies(Box(Know(Box(a))), Know(Box(a))))
        kba = self.mp(bkba, t_box)              # K box A
        t_k = self.axiom(SchemeId.A7_T, implies(Know(Box(a)), Box(a)))
        return self.mp(kba, t_k)

    def box_mono(self, line: int) -> int:
        """From A -> B conclude box A -> box B."""
        a, b = self._impl_parts(line)
        nec = self.box_nec(line)
        dist = self.axiom(SchemeId.A1_BOX_K, implies(
            Box(implies(a, b)), implies(Box(a), Box(b))))
        return self.mp(nec, dist)

    def cstit_nec(self, agent: str, line: int) -> int:
        """From A conclude [agent]A."""
        a = self.formula(line)
        boxed = self.box_nec(line)
        weaken = self.axiom(SchemeId.A2, implies(Box(a), Cstit(agent, a)))
        return self.mp(boxed, weaken)

    def cstit_mono(self, agent: str, line: int) -> int:
        """From A -> B conclude [agent]A -> [agent]B."""
        a, b = self._impl_parts(line)
        nec = self.cstit_nec(agent, line)
        dist = self.axiom(SchemeId.A1_CSTIT_K, implies(
            Cstit(agent, implies(a, b)),
            implies(Cstit(agent, a), Cstit(agent, b))))
        return self.mp(nec, dist)

    def cstit_collect(self, agent: str, x: Formula, y: Formula) -> int:
        """([agent]X & [agent]Y) -> [agent](X & Y)."""
        pair = self.c3(x, y)                    # X -> (Y -> (X & Y))
        lifted = self.cstit_mono(agent, pair)   # [a]X -> [a](Y -> (X & Y))
        dist = self.axiom(SchemeId.A1_CSTIT_K, implies(
            Cstit(agent, implies(y, And(x, y))),
            implies(Cstit(agent, y), Cstit(agent, And(x, y)))))
        curried = self.hs(lifted, dist)         # [a]X -> ([a]Y -> [a](X & Y))
        return self.import_conj(curried)


def refutation_of_contradiction(premise: Formula,
                                agents=()) -> RefutationCertificate:
    """Certificate that {A, ~A} is inconsistent: (A & ~A) -> (p0 & ~p0)."""
    d = Derivation(agents)
    to_p0 = d.efq(premise, FALSUM.left)             # (A & ~A) -> p0
    to_np0 = d.efq(premise, FALSUM.right)           # (A & ~A) -> ~p0
    d.compose_and(to_p0, to_np0)                    # (A & ~A) -> (p0 & ~p0)
    return RefutationCertificate((premise, Not(premise)), d.to_proof())
