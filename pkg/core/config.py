"""
Configuration and budget management for the Rewrite Checker
"""

import json
import os
from dataclasses import dataclass, replace

from .constants import (
    CONFIG_FILE, DEFAULT_NODE_LIMIT, DEFAULT_EQUATION_DEPTH,
    DEFAULT_SEARCH_DEPTH, DEFAULT_LENGTH_SLACK,
    DEFAULT_MAXLEN_SINGLE, DEFAULT_MAXLEN_MULTI,
)
from .logging_setup import logger


@dataclass(frozen=True)
class Budget:
    """Resource bounds shared by the search and proof engines"""
    nodes: int = DEFAULT_NODE_LIMIT
    depth: int = DEFAULT_EQUATION_DEPTH
    search_depth: int = DEFAULT_SEARCH_DEPTH
    length_slack: int = DEFAULT_LENGTH_SLACK

    def scaled(self, factor):
        """Budget with node limit and depth multiplied (oracle cross-checks)"""
        return replace(self, nodes=self.nodes * factor, depth=self.depth * factor)

    def as_dict(self):
        return {
            "nodes": self.nodes,
            "depth": self.depth,
            "search_depth": self.search_depth,
            "length_slack": self.length_slack,
        }


DEFAULT_CONFIG = {
    "nodes": DEFAULT_NODE_LIMIT,
    "depth": DEFAULT_EQUATION_DEPTH,
    "search_depth": DEFAULT_SEARCH_DEPTH,
    "length_slack": DEFAULT_LENGTH_SLACK,
    "maxlen_single": DEFAULT_MAXLEN_SINGLE,
    "maxlen_multi": DEFAULT_MAXLEN_MULTI,
}


def load_config(path=CONFIG_FILE):
    """Load configuration from file"""
    defaults = dict(DEFAULT_CONFIG)
    try:
        if os.path.exists(path):
            with open(path, 'r') as f:
                config = json.load(f)
                logger.info(f"Loaded configuration from {path}")
                return {**defaults, **config}
        else:
            logger.debug("No config file found, using defaults")
    except Exception as e:
        logger.error(f"Failed to load config from {path}: {e}")
    return defaults


def save_config(config, path=CONFIG_FILE):
    """Save configuration to file"""
    try:
        with open(path, 'w') as f:
            json.dump(config, f, indent=2)
        logger.debug(f"Saved configuration to {path}")
    except Exception as e:
        logger.error(f"Failed to save config to {path}: {e}")


def budget_from_config(config=None, **overrides):
    """Build a Budget from a config dict; None-valued overrides are ignored"""
    config = DEFAULT_CONFIG if config is None else config
    values = {key: config.get(key, DEFAULT_CONFIG[key])
              for key in ("nodes", "depth", "search_depth", "length_slack")}
    values.update({k: v for k, v in overrides.items() if v is not None})
    return Budget(**values)
