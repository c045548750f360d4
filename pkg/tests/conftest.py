import pytest


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path_factory, monkeypatch):
    """Keep every test's ingredient cache out of the working directory."""
    monkeypatch.setenv("SPLITCODE_CACHE", str(tmp_path_factory.mktemp("cache")))
