"""
Tests for settings: environment parsing and overrides
"""
from fractions import Fraction

import pytest

from errors import ConfigError
from settings import Settings, load_settings


def test_defaults_without_environment(monkeypatch):
    for name in ("HCOVER_THREADS", "HCOVER_Q_MAX", "HCOVER_GAP_EPS", "HCOVER_ORACLE_MAX_N"):
        monkeypatch.delenv(name, raising=False)
    settings = load_settings()
    assert settings.threads == 1 and settings.q_max == 4
    assert settings.oracle_max_n == 8
    assert settings.gap_eps == Fraction(1)


def test_environment_values(monkeypatch):
    monkeypatch.setenv("HCOVER_THREADS", "4")
    monkeypatch.setenv("HCOVER_GAP_EPS", "1/2")
    monkeypatch.setenv("HCOVER_EXACT_MAX_T3", "16")
    settings = load_settings()
    assert settings.threads == 4
    assert settings.gap_eps == Fraction(1, 2)
    assert settings.exact_max(2) == 24 and settings.exact_max(3) == 16


def test_blank_value_falls_back(monkeypatch):
    monkeypatch.setenv("HCOVER_Q_MAX", "  ")
    assert load_settings().q_max == 4


@pytest.mark.parametrize("name, raw", [
    ("HCOVER_THREADS", "many"),
    ("HCOVER_THREADS", "0"),
    ("HCOVER_GAP_EPS", "-1"),
    ("HCOVER_GAP_EPS", "1/0"),
])
def test_invalid_environment(monkeypatch, name, raw):
    monkeypatch.setenv(name, raw)
    with pytest.raises(ConfigError, match=name):
        load_settings()


def test_overrides_skip_none():
    settings = Settings().with_overrides(threads=3, q_max=None)
    assert settings.threads == 3 and settings.q_max == 4
