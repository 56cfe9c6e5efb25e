import pathlib

import pytest
from hypothesis import settings

settings.register_profile("ci", deadline=None)
settings.load_profile("ci")

REPO = pathlib.Path(__file__).resolve().parents[1]


@pytest.fixture(scope="session")
def data_path():
    return REPO / "data" / "curves.csv"


@pytest.fixture(scope="session")
def fixture_records(data_path):
    from selgrowth.database import ingest

    result = ingest(data_path)
    assert not result.rejects
    return result.records
