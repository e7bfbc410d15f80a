#!/usr/bin/env python3
"""Regenerate the proof and refutation corpus under corpus/.

The corpus files are checked in; this script exists so they can be rebuilt
after combinator changes.  Run from the repository root:

    python3 tools/build_corpus.py
"""

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from jstit.derive import Derivation, refutation_of_contradiction
from jstit.proofkit import (
    check_proof,
    check_refutation,
    proof_to_obj,
    refutation_to_obj,
)
from jstit.schemes import SchemeId
from jstit.syntax import (
    And,
    Atom,
    Bang,
    Box,
    Cstit,
    Just,
    Know,
    Not,
    Prove,
    Proven,
    Var,
    implies,
    print_formula,
    FALSUM,
)

ROOT = Path(__file__).resolve().parent.parent / "corpus"


def save(relpath: str, obj) -> None:
    path = ROOT / relpath
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(obj, indent=2) + "\n", encoding="utf-8")
    print(f"wrote {path}")


def proof_axiom_a2():
    d = Derivation(agents=["a"])
    d.axiom(SchemeId.A2, implies(Box(Atom("p")), Cstit("a", Atom("p"))))
    return d.to_proof()


def proof_neck_p1():
    d = Derivation()
    line = d.p1(Atom("p"), Atom("q"))
    d.neck(line)
    return d.to_proof()


def proof_constspec_a2():
    d = Derivation(agents=["a"])
    d.constspec("c", SchemeId.A2, implies(Box(Atom("p")), Cstit("a", Atom("p"))))
    return d.to_proof()


def proof_r4_full():
    # K(p0 & ~p0) -> ~Proven(q), then the proving-to-proven transfer rule.
    d = Derivation(agents=["a", "b"])
    weaken = d.axiom(SchemeId.A7_T, implies(Know(FALSUM), FALSUM))
    explode = d.efq(Atom("p0"), Not(Proven(Atom("q"))))
    premise = d.hs(weaken, explode)
    d.r4(premise, FALSUM, [Atom("q")])
    return d.to_proof()


def proof_just_box():
    # x:p -> box x:p
    d = Derivation()
    xp = Just(Var("x"), Atom("p"))
    bang = Just(Bang(Var("x")), xp)
    a5_first = d.axiom(SchemeId.A5, implies(xp, And(bang, Know(Atom("p")))))
    intro = d.project(a5_first, 1, 2)           # x:p -> !x:(x:p)
    a5_second = d.axiom(SchemeId.A5, implies(
        bang, And(Just(Bang(Bang(Var("x"))), bang), Know(xp))))
    reflect = d.project(a5_second, 2, 2)        # !x:(x:p) -> K x:p
    know = d.hs(intro, reflect)                 # x:p -> K x:p
    up = d.axiom(SchemeId.A8, implies(Know(xp), Box(Know(Box(xp)))))
    boxed = d.hs(know, up)
    t_box = d.axiom(SchemeId.A1_BOX_T, implies(Box(Know(Box(xp))), Know(Box(xp))))
    step = d.hs(boxed, t_box)
    t_know = d.axiom(SchemeId.A7_T, implies(Know(Box(xp)), Box(xp)))
    d.hs(step, t_know)
    return d.to_proof()


def proof_proven_box():
    # Proven(p) -> box Proven(p)
    d = Derivation()
    pv = Proven(Atom("p"))
    a11 = d.axiom(SchemeId.A11, implies(pv, And(Know(pv), Know(Atom("p")))))
    know = d.project(a11, 1, 2)                 # Proven(p) -> K Proven(p)
    up = d.axiom(SchemeId.A8, implies(Know(pv), Box(Know(Box(pv)))))
    boxed = d.hs(know, up)
    t_box = d.axiom(SchemeId.A1_BOX_T, implies(Box(Know(Box(pv))), Know(Box(pv))))
    step = d.hs(boxed, t_box)
    t_know = d.axiom(SchemeId.A7_T, implies(Know(Box(pv)), Box(pv)))
    d.hs(step, t_know)
    return d.to_proof()


def proof_know_box():
    # K p -> box K p
    d = Derivation()
    p = Atom("p")
    up = d.axiom(SchemeId.A8, implies(Know(p), Box(Know(Box(p)))))
    t_box = d.axiom(SchemeId.A1_BOX_T, implies(Box(p), p))
    collapse = d.know_mono(t_box)               # K box p -> K p
    boxed = d.box_mono(collapse)                # box K box p -> box K p
    d.hs(up, boxed)
    return d.to_proof()


def proof_prove_cell():
    # (Prove(a,p) & ~box Prove(a,p)) -> [a](Prove(a,p) & ~box Prove(a,p))
    d = Derivation(agents=["a"])
    pv = Prove("a", Atom("p"))
    nb = Not(Box(pv))
    a9 = d.axiom(SchemeId.A9, implies(pv, And(
        And(Not(Proven(Atom("p"))), Cstit("a", pv)), Know(Atom("p")))))
    acts = d.project(a9, 2, 3)                  # Prove -> [a]Prove

    # ~box Prove -> box ~box Prove, via the 5-scheme for <> on ~Prove
    to_dd = d.box_mono(d.dni(pv))               # box Prove -> box ~~Prove
    in_ = d.contrapose(to_dd)                   # ~box ~~Prove -> ~box Prove
    from_dd = d.box_mono(d.dne(pv))             # box ~~Prove -> box Prove
    out = d.contrapose(from_dd)                 # ~box Prove -> ~box ~~Prove
    five = d.axiom(SchemeId.A1_BOX_5, implies(
        Not(Box(Not(Not(pv)))), Box(Not(Box(Not(Not(pv)))))))
    half = d.hs(out, five)                      # ~box Prove -> box ~box ~~Prove
    lower = d.box_mono(in_)                     # box ~box ~~Prove -> box ~box Prove
    stable = d.hs(half, lower)                  # ~box Prove -> box ~box Prove

    paired = d.pair_mono(acts, stable)          # (Prove & ~box Prove) -> ([a]Prove & box ~box Prove)
    weaken = d.axiom(SchemeId.A2, implies(Box(nb), Cstit("a", nb)))
    inside = d.pair_mono(d.identity(Cstit("a", pv)), weaken)
    shifted = d.hs(paired, inside)              # ... -> ([a]Prove & [a]~box Prove)
    collect = d.cstit_collect("a", pv, nb)
    d.hs(shifted, collect)
    return d.to_proof()


def model_violates_7():
    # x presented at the root on history m1 but gone at m1 itself
    return {
        "agents": ["a"],
        "moments": ["m0", "m1", "m2"],
        "root": "m0",
        "edges": [["m0", "m1"], ["m0", "m2"]],
        "choice": {},
        "act": {"m0": {"m1": ["x"]}},
        "r_extra": [],
        "evidence": {},
        "valuation": {"p": [["m0", "m1"]]},
        "mode": "completed",
    }


def model_violates_9():
    # m2/m3 are undivided at m0 (they share m1) but present different proofs
    return {
        "agents": ["a"],
        "moments": ["m0", "m1", "m2", "m3"],
        "root": "m0",
        "edges": [["m0", "m1"], ["m1", "m2"], ["m1", "m3"]],
        "choice": {},
        "act": {
            "m0": {"m2": ["x"]},
            "m1": {"m2": ["x"]},
            "m2": {"m2": ["x"]}
        },
        "r_extra": [],
        "evidence": {},
        "valuation": {},
        "mode": "completed",
    }


def model_minimal():
    return {
        "agents": ["a"],
        "moments": ["m0"],
        "root": "m0",
        "edges": [],
        "choice": {},
        "act": {},
        "r_extra": [],
        "evidence": {},
        "valuation": {},
        "mode": "completed",
    }


def model_raw_bad_evidence():
    # raw mode: base violates monotonicity (5) and sum closure (6)
    return {
        "agents": ["a"],
        "moments": ["m0", "m1"],
        "root": "m0",
        "edges": [["m0", "m1"]],
        "choice": {},
        "act": {},
        "r_extra": [],
        "evidence": {"m0": {"x": ["p"]}},
        "valuation": {},
        "universe": {"formulas": ["p"], "terms": ["x + y"]},
        "mode": "raw",
    }


def main() -> None:
    proofs = {
        "proofs/axiom_a2.json": proof_axiom_a2(),
        "proofs/neck_p1.json": proof_neck_p1(),
        "proofs/constspec_a2.json": proof_constspec_a2(),
        "proofs/r4_full.json": proof_r4_full(),
        "proofs/just_box.json": proof_just_box(),
        "proofs/proven_box.json": proof_proven_box(),
        "proofs/know_box.json": proof_know_box(),
        "proofs/prove_cell.json": proof_prove_cell(),
    }
    for rel, proof in proofs.items():
        result = check_proof(proof)
        if not result.ok:
            raise SystemExit(f"{rel}: {result.message}")
        save(rel, proof_to_obj(proof))
        print(f"  {len(proof.lines):3d} lines, concludes "
              f"{print_formula(proof.conclusion, resugar_implications=True)}")

    cert = refutation_of_contradiction(Atom("p"))
    result = check_refutation(cert)
    if not result.ok:
        raise SystemExit(f"refutation: {result.message}")
    save("refutations/p_notp.json", refutation_to_obj(cert))

    save("models/violates7.json", model_violates_7())
    save("models/violates9.json", model_violates_9())
    save("models/minimal.json", model_minimal())
    save("models/raw_bad_evidence.json", model_raw_bad_evidence())


if __name__ == "__main__":
    main()
