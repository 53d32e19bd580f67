import os
from pathlib import Path

import pytest

from lexiclust.normalize import default_lexicon_path, load_lexicon
from lexiclust.wordnet import load_database

FIXTURES = Path(__file__).parent / "fixtures"
MINI_WN = FIXTURES / "mini_wn"
DATA = Path(__file__).resolve().parents[1] / "src" / "lexiclust" / "data"
FACTORS = DATA / "factors_237.txt"

# six-phrase similarity table used by the hand-traced clustering goldens
SIX = [
    [0.35, 0.30, 0.45, 0.30, 0.05, 0.00],
    [0.30, 0.45, 0.15, 0.05, 0.10, 0.20],
    [0.45, 0.15, 0.70, 0.20, 0.00, 0.00],
    [0.30, 0.05, 0.20, 0.50, 0.25, 0.10],
    [0.05, 0.10, 0.00, 0.25, 0.60, 0.30],
    [0.00, 0.20, 0.00, 0.10, 0.30, 0.40],
]


def real_wordnet_dir():
    env = os.environ.get("LEXICLUST_WORDNET")
    candidates = [Path(env)] if env else []
    candidates.append(Path.home() / ".cache" / "lexiclust" / "wordnet-3.0")
    for c in candidates:
        if (c / "index.noun").is_file():
            return c
    return None


@pytest.fixture(scope="session")
def mini_db():
    return load_database(MINI_WN)


@pytest.fixture(scope="session")
def real_db():
    d = real_wordnet_dir()
    if d is None:
        pytest.skip("WordNet 3.0 noun files not available (set LEXICLUST_WORDNET)")
    return load_database(d)


@pytest.fixture(scope="session")
def shipped_lexicon():
    return load_lexicon(default_lexicon_path())


@pytest.fixture
def six():
    return [row[:] for row in SIX]
