"""Workbench for implicit justification-stit logic.

Subpackages:

- ``syntax``:   proof-polynomial and formula language (parse, print, AST)
- ``schemes``:  axiom-scheme instance matching (A0 basis through A13)
- ``model``:    finite branching-time models and constraint validation
- ``evidence``: evidence-function closure over the finite universe
- ``checker``:  the satisfaction relation and validity over a model
- ``proofkit``: Hilbert proof and refutation-certificate checking
- ``derive``:   proof-building combinators (not part of the trusted core)
- ``explorer``: bounded model enumeration, satisfiability search, fuzzing
- ``cli``:      batch command-line front end (``jstit`` entry point)
"""

from .syntax import (
    Agent,
    And,
    Atom,
    Bang,
    Box,
    Const,
    Cstit,
    Formula,
    Just,
    JstitError,
    Know,
    Not,
    ParseError,
    ProofTerm,
    Prove,
    Proven,
    Sum,
    App,
    Var,
    parse_formula,
    parse_term,
    print_formula,
    print_term,
    proof_vars,
    subformulas,
    subterms,
)

__all__ = [
    "Agent", "And", "App", "Atom", "Bang", "Box", "Const", "Cstit",
    "Formula", "Just", "JstitError", "Know", "Not", "ParseError",
    "ProofTerm", "Prove", "Proven", "Sum", "Var",
    "parse_formula", "parse_term", "print_formula", "print_term",
    "proof_vars", "subformulas", "subterms",
]
