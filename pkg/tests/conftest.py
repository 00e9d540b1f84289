import copy

import pytest

import library.config as config


@pytest.fixture(autouse=True)
def isolated_config(monkeypatch):
    """Commands write their overrides into the global configuration: give each test its own copy"""
    monkeypatch.setattr(config, "CONFIG_DATA", copy.deepcopy(config.CONFIG_DATA))
    monkeypatch.setattr(config, "PROFILE_DATA", copy.deepcopy(config.PROFILE_DATA))
    yield config.CONFIG_DATA
