import json
from pathlib import Path

import pytest

from jstit.model import Model, load_model_path

REPO = Path(__file__).resolve().parent.parent
CORPUS = REPO / "corpus"

PROOF_FILES = sorted((CORPUS / "proofs").glob("*.json"))
MODEL_FILES = sorted((CORPUS / "models").glob("*.json"))
REFUTATION_FILES = sorted((CORPUS / "refutations").glob("*.json"))


@pytest.fixture(scope="session")
def witness_model() -> Model:
    return load_model_path(CORPUS / "models" / "prove_witness.json")


@pytest.fixture(scope="session")
def corpus_models() -> dict[str, Model]:
    return {p.stem: load_model_path(p) for p in MODEL_FILES}


def corpus_path(*parts) -> Path:
    return CORPUS.joinpath(*parts)


def load_json(path: Path):
    return json.loads(path.read_text(encoding="utf-8"))
