import os
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, max_examples=100, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("fast", deadline=None, max_examples=10)
settings.register_profile("thorough", deadline=None, max_examples=1000)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "default"))

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixture_path():
    def _path(name: str) -> str:
        return str(FIXTURES / name)
    return _path


@pytest.fixture(autouse=True)
def _clean_cli_env(monkeypatch):
    for name in ("LEFSCHETZ_FORMAT", "LEFSCHETZ_STRICT", "LEFSCHETZ_LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)
