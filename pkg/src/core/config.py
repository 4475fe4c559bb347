import json
import os
from pathlib import Path
from typing import Dict, Optional

from core.logger import logger

DEFAULT_TERM_BUDGET = 1_000_000
TERM_BUDGET_ENV = "QUASISHIFT_TERM_BUDGET"
CONFIG_DIR_ENV = "QUASISHIFT_CONFIG_DIR"


def get_config_dir() -> Path:
    override = os.environ.get(CONFIG_DIR_ENV)
    if override:
        config_dir = Path(override)
    elif os.name == "nt":
        config_dir = Path(os.environ.get("APPDATA", "")) / "quasishift"
    else:
        config_dir = Path.home() / ".config" / "quasishift"

    config_dir.mkdir(parents=True, exist_ok=True)
    return config_dir


def get_config_file() -> Path:
    return get_config_dir() / "config.json"


def get_default_config() -> Dict:
    return {
        "term_budget": DEFAULT_TERM_BUDGET,
        "max_workers": 4,
    }


def load_config() -> Dict:
    config_file = get_config_file()
    default_config = get_default_config()

    if not config_file.exists():
        save_config(default_config)
        return default_config

    try:
        with open(config_file, "r") as f:
            config = json.load(f)

        for key, value in default_config.items():
            if key not in config:
                config[key] = value

        return config
    except (json.JSONDecodeError, FileNotFoundError):
        save_config(default_config)
        return default_config


def save_config(config: Dict) -> None:
    config_file = get_config_file()
    with open(config_file, "w") as f:
        json.dump(config, f, indent=2)


def get_term_budget(override: Optional[int] = None) -> int:
    """CLI flag, then environment, then config file."""
    if override is not None:
        return override
    from_env = os.environ.get(TERM_BUDGET_ENV)
    if from_env:
        try:
            return int(from_env)
        except ValueError:
            logger.warning(f"ignoring {TERM_BUDGET_ENV}={from_env!r}: not an integer")
    return int(load_config().get("term_budget", DEFAULT_TERM_BUDGET))


def get_max_workers() -> int:
    return max(1, int(load_config().get("max_workers", 4)))

