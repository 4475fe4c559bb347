import json
import logging

from core.config import (
    DEFAULT_TERM_BUDGET,
    get_config_file,
    get_max_workers,
    get_term_budget,
    load_config,
    save_config,
)
from core.logger import logger


def test_default_config_is_created(isolated_config):
    config = load_config()
    assert config["term_budget"] == DEFAULT_TERM_BUDGET
    assert get_config_file() == isolated_config / "config.json"
    assert json.loads(get_config_file().read_text())["max_workers"] == 4


def test_missing_keys_are_filled(isolated_config):
    save_config({"term_budget": 500})
    config = load_config()
    assert config["term_budget"] == 500
    assert config["max_workers"] == 4


def test_corrupt_config_falls_back_to_defaults(isolated_config):
    isolated_config.mkdir(parents=True, exist_ok=True)
    (isolated_config / "config.json").write_text("{not json")
    assert load_config()["term_budget"] == DEFAULT_TERM_BUDGET


def test_term_budget_precedence(monkeypatch):
    save_config({"term_budget": 500, "max_workers": 2})
    assert get_term_budget() == 500
    monkeypatch.setenv("QUASISHIFT_TERM_BUDGET", "700")
    assert get_term_budget() == 700
    assert get_term_budget(900) == 900
    monkeypatch.setenv("QUASISHIFT_TERM_BUDGET", "lots")
    assert get_term_budget() == 500


def test_max_workers_is_at_least_one():
    save_config({"max_workers": 0})
    assert get_max_workers() == 1


def test_unparsable_budget_env_is_logged(monkeypatch, caplog):
    save_config({"term_budget": 500})
    monkeypatch.setenv("QUASISHIFT_TERM_BUDGET", "1e6")
    monkeypatch.setattr(logger, "propagate", True)
    with caplog.at_level(logging.WARNING, logger=logger.name):
        assert get_term_budget() == 500
    assert "QUASISHIFT_TERM_BUDGET='1e6'" in caplog.text
