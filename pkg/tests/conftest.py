import json
from pathlib import Path

import pytest

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def load_spec(name: str) -> dict:
    return json.loads((CORPUS / name).read_text())


@pytest.fixture
def corpus():
    return CORPUS
