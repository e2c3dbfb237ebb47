from __future__ import annotations

import sys
from pathlib import Path

import pytest

from ctvm.geofilter import load_region_table
from ctvm.textproc import Pipeline, load_stopwords

# make `import oracles` work no matter where pytest is launched from
sys.path.insert(0, str(Path(__file__).parent))

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def stopwords() -> frozenset[str]:
    return load_stopwords()


@pytest.fixture(scope="session")
def states():
    return load_region_table()


# session-scoped: Pipeline is frozen, so sharing one is safe and lets
# hypothesis-driven tests take it as a fixture
@pytest.fixture(scope="session")
def plain_pipeline(stopwords) -> Pipeline:
    return Pipeline(stopwords=stopwords)


@pytest.fixture(scope="session")
def obama_pipeline(stopwords) -> Pipeline:
    return Pipeline(stopwords=stopwords, query_terms=frozenset({"obama"}))


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR
