# tests/conftest.py
import pytest

from src import config


@pytest.fixture
def golden_root(tmp_path, monkeypatch):
    """An empty goldens directory picked up through the environment override."""
    root = tmp_path / "goldens"
    root.mkdir()
    monkeypatch.setenv(config.GOLDENS_ENV_VAR, str(root))
    return root
