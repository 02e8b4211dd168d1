import pytest


@pytest.fixture(autouse=True)
def _no_shared_cache(monkeypatch):
    # solver caches are opted into per test
    monkeypatch.delenv("QCA_CACHE_DIR", raising=False)
