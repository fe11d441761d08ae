import os
from pathlib import Path

import pytest
from hypothesis import settings

import chunkmind
from chunkmind import kbstore
from chunkmind.lexicon import seed_lexicon

settings.register_profile("ci", settings(max_examples=1000, deadline=None))
settings.register_profile("dev", settings(max_examples=100, deadline=None))
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "dev"))

DATA = Path(chunkmind.__file__).parent / "data"
QUEEN_KB = DATA / "queen.kb.json"
HOUSE_KB = DATA / "house.kb.json"


@pytest.fixture
def lex():
    return seed_lexicon()


@pytest.fixture
def queen():
    return kbstore.load(QUEEN_KB)


@pytest.fixture
def house():
    return kbstore.load(HOUSE_KB)
