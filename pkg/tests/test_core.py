"""
Tests for configuration, budgets and logging setup
"""

import json
import logging

from core import (
    Budget, load_config, save_config, budget_from_config, logger, setup_logging,
    set_console_level, DEFAULT_NODE_LIMIT, DEFAULT_EQUATION_DEPTH,
)
from core.config import DEFAULT_CONFIG


def test_budget_defaults():
    budget = Budget()
    assert budget.nodes == DEFAULT_NODE_LIMIT
    assert budget.depth == DEFAULT_EQUATION_DEPTH
    assert set(budget.as_dict()) == {"nodes", "depth", "search_depth", "length_slack"}


def test_scaled_budget_multiplies_nodes_and_depth():
    budget = Budget(nodes=100, depth=3).scaled(4)
    assert (budget.nodes, budget.depth) == (400, 12)
    assert budget.search_depth == Budget().search_depth


def test_budget_from_config_ignores_missing_overrides():
    budget = budget_from_config({"nodes": 50}, nodes=None, depth=2)
    assert budget.nodes == 50
    assert budget.depth == 2
    assert budget_from_config() == Budget()


def test_missing_config_gives_defaults(tmp_path):
    assert load_config(str(tmp_path / "absent.json")) == DEFAULT_CONFIG


def test_config_round_trip(tmp_path):
    path = str(tmp_path / "config.json")
    save_config({"nodes": 123, "maxlen_single": 4}, path)
    config = load_config(path)
    assert config["nodes"] == 123
    assert config["maxlen_single"] == 4
    assert config["depth"] == DEFAULT_CONFIG["depth"]


def test_corrupt_config_falls_back(tmp_path):
    path = tmp_path / "config.json"
    path.write_text("{not json", encoding="utf-8")
    assert load_config(str(path)) == DEFAULT_CONFIG


def test_saved_config_is_indented_json(tmp_path):
    path = tmp_path / "config.json"
    save_config({"nodes": 1}, str(path))
    assert json.loads(path.read_text()) == {"nodes": 1}
    assert "\n  " in path.read_text()


def test_setup_logging_is_idempotent():
    count = len(logger.handlers)
    assert setup_logging() is logger
    assert len(logger.handlers) == count
    assert logger.name == "RewriteChecker"


def test_console_level_can_be_changed():
    console = next(h for h in logger.handlers if h.get_name() == "console")
    try:
        set_console_level(logging.WARNING)
        assert console.level == logging.WARNING
    finally:
        set_console_level(logging.INFO)
    assert console.level == logging.INFO
