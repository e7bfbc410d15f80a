import json

import pytest

from jstit.cli import main

from conftest import corpus_path

WITNESS = str(corpus_path("models", "prove_witness.json"))


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestParse:
    def test_formula_ok(self, capsys):
        code, out, _ = run(capsys, "parse", "--formula", "dia p")
        assert code == 0 and out.strip() == "~box ~p"

    def test_syntax_error(self, capsys):
        code, _, err = run(capsys, "parse", "--formula", "p &&")
        assert code == 2 and "syntax error" in err

    def test_term(self, capsys):
        code, out, _ = run(capsys, "parse", "--term", "x+!y")
        assert code == 0 and out.strip() == "x + !y"

    def test_requires_exactly_one_input(self, capsys):
        code, _, _ = run(capsys, "parse", "--formula", "p", "--term", "x")
        assert code == 2


class TestValidate:
    def test_clean_model(self, capsys):
        code, out, _ = run(capsys, "validate", "--model", WITNESS)
        assert code == 0 and "valid" in out

    def test_violator_names_constraint(self, capsys):
        code, out, _ = run(capsys, "validate", "--model",
                           str(corpus_path("models", "violates9.json")))
        assert code == 3 and "constraint 9" in out

    def test_malformed_file(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{broken")
        code, _, err = run(capsys, "validate", "--model", str(bad))
        assert code == 2


class TestEval:
    def test_true_verdict(self, capsys):
        code, out, _ = run(capsys, "eval", "--model", WITNESS,
                           "--moment", "m0", "--history", "m1",
                           "--formula", "Prove(a,p)")
        assert code == 0 and out.strip() == "true"

    def test_false_verdict(self, capsys):
        code, out, _ = run(capsys, "eval", "--model", WITNESS,
                           "--moment", "m0", "--history", "m2",
                           "--formula", "Prove(a,p)")
        assert code == 1 and out.strip() == "false"

    def test_unknown_moment(self, capsys):
        code, _, err = run(capsys, "eval", "--model", WITNESS,
                           "--moment", "zz", "--history", "m1",
                           "--formula", "p")
        assert code == 3 and "unknown moment" in err


class TestProveCheck:
    def test_corpus_ok(self, capsys):
        code, out, _ = run(capsys, "prove-check",
                           str(corpus_path("proofs", "axiom_a2.json")))
        assert code == 0 and "ok" in out

    def test_tampered_names_line(self, tmp_path, capsys):
        obj = json.loads(corpus_path("proofs", "neck_p1.json").read_text())
        lines = obj if isinstance(obj, list) else obj["lines"]
        lines[1]["formula"] = "K (q -> (q -> p))"
        bad = tmp_path / "tampered.json"
        bad.write_text(json.dumps(obj))
        code, out, _ = run(capsys, "prove-check", str(bad))
        assert code == 1 and "line 2" in out

    def test_bad_json(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("not json")
        code, _, err = run(capsys, "prove-check", str(bad))
        assert code == 2

    def test_refutation_flag(self, capsys):
        code, out, _ = run(capsys, "prove-check", "--refutation",
                           str(corpus_path("refutations", "p_notp.json")))
        assert code == 0

    def test_explicit_agents_override(self, capsys):
        code, _, _ = run(capsys, "prove-check",
                         str(corpus_path("proofs", "r4_full.json")),
                         "--agents", "a,b,d")
        assert code == 1


class TestSearch:
    def test_sat_writes_witness(self, tmp_path, capsys):
        out_path = tmp_path / "w.json"
        code, out, _ = run(capsys, "search", "--formula", "p",
                           "--out", str(out_path))
        assert code == 0 and "SAT" in out
        assert json.loads(out_path.read_text())["root"]

    def test_no_finite_model_formula(self, tmp_path, capsys):
        code, out, _ = run(capsys, "search", "--formula", "K(dia p & dia ~p)",
                           "--out", str(tmp_path / "w.json"))
        assert code == 1 and "UNSAT" in out

    def test_budget(self, tmp_path, capsys):
        code, _, err = run(capsys, "search", "--formula", "K(dia p & dia ~p)",
                           "--budget", "5", "--out", str(tmp_path / "w.json"))
        assert code == 4 and "budget" in err

    def test_syntax_error(self, tmp_path, capsys):
        code, _, err = run(capsys, "search", "--formula", "p ->",
                           "--out", str(tmp_path / "w.json"))
        assert code == 2


class TestFuzz:
    def test_clean_run(self, tmp_path, capsys):
        report = tmp_path / "r.json"
        code, out, _ = run(capsys, "fuzz", "--seed", "42",
                           "--iterations", "25", "--out", str(report))
        assert code == 0
        data = json.loads(report.read_text())
        assert data["iterations"] == 25
        assert data["counterexamples"] == []

    def test_zero_iterations(self, tmp_path, capsys):
        code, _, _ = run(capsys, "fuzz", "--iterations", "0",
                         "--out", str(tmp_path / "r.json"))
        assert code == 0

    def test_relax_hook_fails_with_counterexample(self, tmp_path, capsys):
        report = tmp_path / "r.json"
        code, out, _ = run(capsys, "fuzz", "--seed", "2",
                           "--iterations", "300",
                           "--relax-constraint", "11", "--out", str(report))
        assert code == 1 and "counterexample" in out
        data = json.loads(report.read_text())
        assert data["counterexamples"]
        assert data["relaxed_constraints"] == ["11"]
