"""Object language for the jstit workbench: proof polynomials and formulas.

Proof polynomials are built from proof variables (identifiers starting with
x, y, z, w or u), proof constants (a, b, c, d), sum ``s + t``, application
``s * t`` and the proof checker ``!t``, with precedence ``!`` > ``*`` > ``+``
and ``*``/``+`` left-associative.

Formulas are built from atoms (identifiers starting with p, q, r or s) and
the nine primitive constructors::

    ~A      A & B      [j]A      box A      t:A      K A
    Prove(j, A)        Proven(A)

``A | B``, ``A -> B``, ``dia A``, ``<K>A`` and ``<j>A`` are accepted by the
parser as sugar and desugared immediately::

    A | B   ->  ~(~A & ~B)         dia A  ->  ~box ~A
    A -> B  ->  ~(A & ~B)          <K>A   ->  ~K~A
                                   <j>A   ->  ~[j]~A

Precedence, loosest first: ``->`` (right-assoc), ``|``, ``&``, then the unary
prefixes (``~``, ``box``, ``dia``, ``K``, ``<K>``, ``[j]``, ``<j>``, ``t:``),
which bind a term or modality to the smallest following formula unit.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Union

Agent = str


class JstitError(Exception):
    """Base class for errors raised by this package."""


class ParseError(JstitError):
    """Syntax error with source position and the tokens that were expected."""

    def __init__(self, message: str, position: int, expected: tuple[str, ...] = ()):
        self.position = position
        self.expected = expected
        detail = f"{message} at position {position}"
        if expected:
            detail += " (expected " + " or ".join(expected) + ")"
        super().__init__(detail)


# ---------------------------------------------------------------------------
# AST nodes


class ProofTerm:
    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Var(ProofTerm):
    name: str


@dataclass(frozen=True, slots=True)
class Const(ProofTerm):
    name: str


@dataclass(frozen=True, slots=True)
class Sum(ProofTerm):
    left: ProofTerm
    right: ProofTerm


@dataclass(frozen=True, slots=True)
class App(ProofTerm):
    left: ProofTerm
    right: ProofTerm


@dataclass(frozen=True, slots=True)
class Bang(ProofTerm):
    inner: ProofTerm


class Formula:
    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True, slots=True)
class Not(Formula):
    operand: Formula


@dataclass(frozen=True, slots=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Cstit(Formula):
    agent: Agent
    operand: Formula


@dataclass(frozen=True, slots=True)
class Box(Formula):
    operand: Formula


@dataclass(frozen=True, slots=True)
class Just(Formula):
    term: ProofTerm
    operand: Formula


@dataclass(frozen=True, slots=True)
class Know(Formula):
    operand: Formula


@dataclass(frozen=True, slots=True)
class Prove(Formula):
    agent: Agent
    operand: Formula


@dataclass(frozen=True, slots=True)
class Proven(Formula):
    operand: Formula


# Derived connectives, used everywhere a sugar form has to be built or
# recognized.  They produce primitive ASTs only.

def implies(a: Formula, b: Formula) -> Formula:
    return Not(And(a, Not(b)))


def disj(a: Formula, b: Formula) -> Formula:
    return Not(And(Not(a), Not(b)))


def dia(a: Formula) -> Formula:
    return Not(Box(Not(a)))


def dual_know(a: Formula) -> Formula:
    return Not(Know(Not(a)))


def dual_cstit(agent: Agent, a: Formula) -> Formula:
    return Not(Cstit(agent, Not(a)))


def split_implication(f: Formula) -> Optional[tuple[Formula, Formula]]:
    """Recognize the desugared shape of ``A -> B``; return (A, B) or None."""
    if isinstance(f, Not) and isinstance(f.operand, And) and isinstance(f.operand.right, Not):
        return f.operand.left, f.operand.right.operand
    return None


def split_disjunction(f: Formula) -> Optional[tuple[Formula, Formula]]:
    """Recognize the desugared shape of ``A | B``; return (A, B) or None."""
    if (
        isinstance(f, Not)
        and isinstance(f.operand, And)
        and isinstance(f.operand.left, Not)
        and isinstance(f.operand.right, Not)
    ):
        return f.operand.left.operand, f.operand.right.operand
    return None


def conjoin(parts: list[Formula]) -> Formula:
    """Left-associated conjunction of one or more formulas."""
    if not parts:
        raise ValueError("conjoin needs at least one conjunct")
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


def disjoin(parts: list[Formula]) -> Formula:
    """Right-nested disjunction of one or more formulas (desugared)."""
    if not parts:
        raise ValueError("disjoin needs at least one disjunct")
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = disj(p, out)
    return out


# The language has no primitive falsum; refutations target this fixed formula
# over the reserved atom p0.
FALSUM = And(Atom("p0"), Not(Atom("p0")))


# ---------------------------------------------------------------------------
# Tokenizer

KEYWORDS = {"box", "dia", "K", "Prove", "Proven"}

_TOKEN_RE = re.compile(
    r"->|[~&|():,\[\]<>+*!]|[A-Za-z_][A-Za-z0-9_]*"
)

ATOM_INITIALS = "pqrs"
PVAR_INITIALS = "xyzwu"
PCONST_INITIALS = "abcd"


@dataclass(frozen=True, slots=True)
class Token:
    kind: str  # operator/keyword literal, or "ident"
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        lexeme = m.group()
        if lexeme[0].isalpha() or lexeme[0] == "_":
            kind = lexeme if lexeme in KEYWORDS else "ident"
        else:
            kind = lexeme
        tokens.append(Token(kind, lexeme, pos))
        pos = m.end()
    return tokens


class _Parser:
    """Recursive-descent parser shared by the term and formula entry points."""

    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0

    # --- token plumbing

    def peek(self) -> Optional[Token]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def advance(self) -> Token:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", len(self.text))
        self.pos += 1
        return tok

    def expect(self, kind: str) -> Token:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", len(self.text), (kind,))
        if tok.kind != kind:
            raise ParseError(f"unexpected token {tok.text!r}", tok.pos, (kind,))
        self.pos += 1
        return tok

    def at_end(self) -> bool:
        return self.pos >= len(self.tokens)

    def fail(self, message: str, expected: tuple[str, ...] = ()):
        tok = self.peek()
        pos = tok.pos if tok else len(self.text)
        raise ParseError(message, pos, expected)

    # --- terms: sum := app ("+" app)* ; app := bang ("*" bang)* ;
    #     bang := "!"* atomterm ; atomterm := VAR | CONST | "(" term ")"

    def term(self) -> ProofTerm:
        left = self.term_app()
        while (tok := self.peek()) is not None and tok.kind == "+":
            self.advance()
            left = Sum(left, self.term_app())
        return left

    def term_app(self) -> ProofTerm:
        left = self.term_bang()
        while (tok := self.peek()) is not None and tok.kind == "*":
            self.advance()
            left = App(left, self.term_bang())
        return left

    def term_bang(self) -> ProofTerm:
        if (tok := self.peek()) is not None and tok.kind == "!":
            self.advance()
            return Bang(self.term_bang())
        return self.term_atom()

    def term_atom(self) -> ProofTerm:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", len(self.text), ("term",))
        if tok.kind == "(":
            self.advance()
            inner = self.term()
            self.expect(")")
            return inner
        if tok.kind == "ident":
            if tok.text[0] in PVAR_INITIALS:
                self.advance()
                return Var(tok.text)
            if tok.text[0] in PCONST_INITIALS:
                self.advance()
                return Const(tok.text)
            raise ParseError(
                f"{tok.text!r} is not a proof variable or constant", tok.pos,
                ("proof variable (x..)", "proof constant (a..)"),
            )
        raise ParseError(f"unexpected token {tok.text!r}", tok.pos, ("term",))

    # --- formulas

    def formula(self) -> Formula:
        left = self.disjunction()
        if (tok := self.peek()) is not None and tok.kind == "->":
            self.advance()
            return implies(left, self.formula())  # right-associative
        return left

    def disjunction(self) -> Formula:
        left = self.conjunction()
        while (tok := self.peek()) is not None and tok.kind == "|":
            self.advance()
            left = disj(left, self.conjunction())
        return left

    def conjunction(self) -> Formula:
        left = self.unary()
        while (tok := self.peek()) is not None and tok.kind == "&":
            self.advance()
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", len(self.text), ("formula",))
        if tok.kind == "~":
            self.advance()
            return Not(self.unary())
        if tok.kind == "box":
            self.advance()
            return Box(self.unary())
        if tok.kind == "dia":
            self.advance()
            return dia(self.unary())
        if tok.kind == "K":
            self.advance()
            return Know(self.unary())
        if tok.kind == "[":
            self.advance()
            agent = self.agent_name()
            self.expect("]")
            return Cstit(agent, self.unary())
        if tok.kind == "<":
            self.advance()
            nxt = self.peek()
            if nxt is not None and nxt.kind == "K":
                self.advance()
                self.expect(">")
                return dual_know(self.unary())
            agent = self.agent_name()
            self.expect(">")
            return dual_cstit(agent, self.unary())
        # A term followed by ":" introduces a justification assertion; decide
        # by trial parse since terms and formulas share "(" and identifiers.
        if tok.kind in ("!", "(") or (
            tok.kind == "ident" and tok.text[0] in PVAR_INITIALS + PCONST_INITIALS
        ):
            saved = self.pos
            try:
                t = self.term()
            except ParseError:
                self.pos = saved
            else:
                if (nxt := self.peek()) is not None and nxt.kind == ":":
                    self.advance()
                    return Just(t, self.unary())
                self.pos = saved
        return self.primary()

    def primary(self) -> Formula:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", len(self.text), ("formula",))
        if tok.kind == "(":
            self.advance()
            inner = self.formula()
            self.expect(")")
            return inner
        if tok.kind == "Prove":
            self.advance()
            self.expect("(")
            agent = self.agent_name()
            self.expect(",")
            body = self.formula()
            self.expect(")")
            return Prove(agent, body)
        if tok.kind == "Proven":
            self.advance()
            self.expect("(")
            body = self.formula()
            self.expect(")")
            return Proven(body)
        if tok.kind == "ident":
            if tok.text[0] in ATOM_INITIALS:
                self.advance()
                return Atom(tok.text)
            raise ParseError(
                f"{tok.text!r} is not an atom (atoms start with one of {ATOM_INITIALS!r})",
                tok.pos, ("atom",),
            )
        raise ParseError(f"unexpected token {tok.text!r}", tok.pos, ("formula",))

    def agent_name(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", len(self.text), ("agent name",))
        if tok.kind != "ident":
            raise ParseError(f"unexpected token {tok.text!r}", tok.pos, ("agent name",))
        self.advance()
        return tok.text


def parse_term(text: str) -> ProofTerm:
    """Parse a proof polynomial; raises ParseError with position on bad input."""
    p = _Parser(text)
    t = p.term()
    if not p.at_end():
        p.fail(f"trailing input {p.peek().text!r}")
    return t


def parse_formula(text: str) -> Formula:
    """Parse a formula into a primitive-constructor AST (sugar desugared)."""
    p = _Parser(text)
    f = p.formula()
    if not p.at_end():
        p.fail(f"trailing input {p.peek().text!r}")
    return f


# ---------------------------------------------------------------------------
# Printers.  The output always re-parses to the identical AST.

_TERM_PREC = {Sum: 1, App: 2, Bang: 3, Var: 4, Const: 4}


def print_term(t: ProofTerm) -> str:
    return _print_term(t, 0)


def _print_term(t: ProofTerm, context: int) -> str:
    if isinstance(t, (Var, Const)):
        return t.name
    if isinstance(t, Sum):
        s = f"{_print_term(t.left, 1)} + {_print_term(t.right, 2)}"
        prec = 1
    elif isinstance(t, App):
        s = f"{_print_term(t.left, 2)} * {_print_term(t.right, 3)}"
        prec = 2
    else:  # Bang
        s = f"!{_print_term(t.inner, 3)}"
        prec = 3
    return f"({s})" if prec < context else s


# formula precedence levels: -> 1, | 2, & 3, unary 4, primary 5
def print_formula(f: Formula, resugar_implications: bool = False) -> str:
    return _print_formula(f, 0, resugar_implications)


def _print_formula(f: Formula, context: int, resugar: bool) -> str:
    if resugar and (ab := split_implication(f)) is not None:
        a, b = ab
        s = f"{_print_formula(a, 2, resugar)} -> {_print_formula(b, 1, resugar)}"
        return f"({s})" if 1 < context else s
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, And):
        s = f"{_print_formula(f.left, 3, resugar)} & {_print_formula(f.right, 4, resugar)}"
        return f"({s})" if 3 < context else s
    if isinstance(f, Prove):
        return f"Prove({f.agent}, {_print_formula(f.operand, 0, resugar)})"
    if isinstance(f, Proven):
        return f"Proven({_print_formula(f.operand, 0, resugar)})"
    # unary forms bind at level 4 and take a level-4 operand
    if isinstance(f, Not):
        return f"~{_print_formula(f.operand, 4, resugar)}"
    if isinstance(f, Box):
        return f"box {_print_formula(f.operand, 4, resugar)}"
    if isinstance(f, Know):
        return f"K {_print_formula(f.operand, 4, resugar)}"
    if isinstance(f, Cstit):
        return f"[{f.agent}]{_print_formula(f.operand, 4, resugar)}"
    if isinstance(f, Just):
        return f"{_print_term(f.term, 0)}:{_print_formula(f.operand, 4, resugar)}"
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# Structural helpers

@lru_cache(maxsize=65536)
def subformulas(f: Formula) -> frozenset[Formula]:
    """All formula subtrees of f, including f and bodies under t:A."""
    out: set[Formula] = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if g in out:
            continue
        out.add(g)
        if isinstance(g, And):
            stack.append(g.left)
            stack.append(g.right)
        elif isinstance(g, (Not, Cstit, Box, Just, Know, Prove, Proven)):
            stack.append(g.operand)
    return frozenset(out)


@lru_cache(maxsize=65536)
def subterms(t: ProofTerm) -> frozenset[ProofTerm]:
    """All subterms of t, including t."""
    out: set[ProofTerm] = set()
    stack = [t]
    while stack:
        s = stack.pop()
        if s in out:
            continue
        out.add(s)
        if isinstance(s, (Sum, App)):
            stack.append(s.left)
            stack.append(s.right)
        elif isinstance(s, Bang):
            stack.append(s.inner)
    return frozenset(out)


def formula_terms(f: Formula) -> frozenset[ProofTerm]:
    """All proof terms occurring in f (under t:A), with their subterms."""
    out: set[ProofTerm] = set()
    for g in subformulas(f):
        if isinstance(g, Just):
            out |= subterms(g.term)
    return frozenset(out)


def proof_vars(x: Union[Formula, ProofTerm]) -> frozenset[str]:
    """Names of the proof variables occurring anywhere in a formula or term."""
    if isinstance(x, ProofTerm):
        return frozenset(s.name for s in subterms(x) if isinstance(s, Var))
    out: set[str] = set()
    for t in formula_terms(x):
        if isinstance(t, Var):
            out.add(t.name)
    return frozenset(out)


def atoms(f: Formula) -> frozenset[str]:
    """Names of the propositional atoms occurring in f."""
    return frozenset(g.name for g in subformulas(f) if isinstance(g, Atom))


def agents_of(f: Formula) -> frozenset[Agent]:
    """Agent names occurring in [j]/Prove positions of f."""
    return frozenset(
        g.agent for g in subformulas(f) if isinstance(g, (Cstit, Prove))
    )
