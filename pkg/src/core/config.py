import json
import sys
from os import path
from typing import Dict, Any, List
from src.utils.error_handler import ErrorHandler

# Determine base directory for config file
# When running as a frozen executable, use the directory containing it
# When running as script, use the project root
if getattr(sys, 'frozen', False):
    BASE_DIR = path.dirname(sys.executable)
else:
    # src/core/config.py -> src/core -> src -> root
    BASE_DIR = path.dirname(path.dirname(path.dirname(path.abspath(__file__))))

CONFIG_FILE = path.join(BASE_DIR, "config.json")

DEFAULT_CONFIG = {
    "epsilon": 1e-6,
    "n_max": 512,
    "rule": "left",
    "M": 200,
    "format": "csv",
    "output_dir": "output",
    "log_file": "solver_runs.log",
    "workers": 4,
    "table_epsilons": [1e-4, 1e-6, 1e-8],
    "oracle": {
        "tolerance": 1e-12,
        "max_depth": 40
    }
}


class Config:
    def __init__(self):
        self._data = self._load_from_file()

    def _load_from_file(self) -> Dict[str, Any]:
        if not path.exists(CONFIG_FILE):
            try:
                with open(CONFIG_FILE, 'w') as f:
                    json.dump(DEFAULT_CONFIG, f, indent=4)
            except OSError as e:
                ErrorHandler.log_silent(e, "Writing default config")
            return self._defaults()

        try:
            with open(CONFIG_FILE, 'r') as f:
                loaded = json.load(f)
                # Merge with defaults: any missing keys will use default values
                merged = self._defaults()
                merged.update(loaded)

                # Nested dicts are merged one level deep
                if "oracle" in loaded:
                    oracle = dict(DEFAULT_CONFIG["oracle"])
                    oracle.update(loaded["oracle"])
                    merged["oracle"] = oracle

                return merged
        except Exception as e:
            ErrorHandler.log_silent(e, "Loading config")
            return self._defaults()

    @staticmethod
    def _defaults() -> Dict[str, Any]:
        data = dict(DEFAULT_CONFIG)
        data["oracle"] = dict(DEFAULT_CONFIG["oracle"])
        data["table_epsilons"] = list(DEFAULT_CONFIG["table_epsilons"])
        return data

    def reload(self):
        """Force reload from disk"""
        self._data = self._load_from_file()

    @property
    def epsilon(self) -> float:
        return float(self._data.get("epsilon", DEFAULT_CONFIG["epsilon"]))

    @property
    def n_max(self) -> int:
        return int(self._data.get("n_max", DEFAULT_CONFIG["n_max"]))

    @property
    def rule(self) -> str:
        return self._data.get("rule", DEFAULT_CONFIG["rule"])

    @property
    def M(self) -> int:
        return int(self._data.get("M", DEFAULT_CONFIG["M"]))

    @property
    def output_format(self) -> str:
        return self._data.get("format", DEFAULT_CONFIG["format"])

    @property
    def output_dir(self) -> str:
        return self._data.get("output_dir", DEFAULT_CONFIG["output_dir"])

    @property
    def log_file(self) -> str:
        return self._data.get("log_file", DEFAULT_CONFIG["log_file"])

    @property
    def workers(self) -> int:
        return int(self._data.get("workers", DEFAULT_CONFIG["workers"]))

    @property
    def table_epsilons(self) -> List[float]:
        return [float(e) for e in self._data.get("table_epsilons", DEFAULT_CONFIG["table_epsilons"])]

    @property
    def oracle_tolerance(self) -> float:
        return float(self._data["oracle"].get("tolerance", DEFAULT_CONFIG["oracle"]["tolerance"]))

    @property
    def oracle_max_depth(self) -> int:
        return int(self._data["oracle"].get("max_depth", DEFAULT_CONFIG["oracle"]["max_depth"]))


# Global Singleton Instance
app_config = Config()
