"""
    Configuration and logging management.

    Loads the YAML application config (guards, chain defaults, sampler
    defaults, output layout), validates that every section is present and
    wires the file log handler described by the ``logging`` section.
"""

import logging
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parents[2] / 'config' / 'default_config.yaml'

REQUIRED_SECTIONS = ['enumeration', 'chain', 'samplers', 'spdp', 'experiments', 'logging', 'output']


class ConfigManager:
    """
        Loads, validates, updates and saves the application configuration.

        Args:
            config_path: Optional path to a YAML file; defaults to the
                packaged ``config/default_config.yaml``

        Raises:
            FileNotFoundError: If the configuration file is missing
            ValueError: If a required section is missing

        Example:
            >>> config_manager = ConfigManager()
            >>> config_manager.get_section('chain')['laziness']
            0.5
    """

    def __init__(self, config_path: Optional[Path] = None):
        self.config_path = Path(config_path) if config_path else DEFAULT_CONFIG_PATH
        self.config = self.load_config()

    def load_config(self) -> Dict[str, Any]:
        """
            Read and validate the YAML file.

            Raises:
                FileNotFoundError: If the file doesn't exist
                yaml.YAMLError: If parsing fails
                ValueError: If validation fails
        """
        if not self.config_path.exists():
            raise FileNotFoundError(f"Config file not found: {self.config_path}")

        with open(self.config_path, 'r') as f:
            config = yaml.safe_load(f) or {}

        self._validate_config(config)
        logger.debug(f"Loaded configuration from {self.config_path}")
        return config

    def _validate_config(self, config: Dict[str, Any]) -> None:
        for section in REQUIRED_SECTIONS:
            if section not in config:
                raise ValueError(f"Missing required config section: {section}")
        guards = config['enumeration'] or {}
        for key in ('max_edges', 'max_states'):
            if key in guards and (not isinstance(guards[key], int) or guards[key] < 1):
                raise ValueError(f"enumeration.{key} must be a positive integer")

    def update_config(self, updates: Dict[str, Any], save: bool = True) -> None:
        """
            Deep-merge ``updates`` into the configuration.

            Args:
                updates: Nested dictionary of new values
                save: Write the merged configuration back to ``config_path``

            Example:
                >>> config_manager.update_config({'chain': {'steps': 500}}, save=False)
        """
        self.config = deep_update(self.config, updates)
        self._validate_config(self.config)
        if save:
            self._save_config()

    def _save_config(self) -> None:
        with open(self.config_path, 'w') as f:
            yaml.safe_dump(self.config, f, default_flow_style=False, sort_keys=False)

    def get_section(self, section: str) -> Dict[str, Any]:
        """
            Return one section of the configuration.

            Raises:
                KeyError: If the section doesn't exist
        """
        if section not in self.config:
            raise KeyError(f"Configuration section not found: {section}")
        return self.config[section]


def deep_update(base: Dict[str, Any], updates: Dict[str, Any]) -> Dict[str, Any]:
    """Recursively merge ``updates`` into ``base`` in place and return it."""
    for key, value in updates.items():
        if isinstance(value, dict) and isinstance(base.get(key), dict):
            base[key] = deep_update(base[key], value)
        else:
            base[key] = value
    return base


class LogManager:
    """
        Attaches the file handler configured in the ``logging`` section.

        Console output is owned by the CLI's rich handler; this class only adds
        a persistent log file and sets the root level.

        Args:
            config: Full configuration dictionary

        Configuration Example:
            logging:
              level: INFO
              file: logs/partition_sampler.log
              format: '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    """

    def __init__(self, config: Dict[str, Any]):
        self.config = config.get('logging', {}) or {}
        self.handler: Optional[logging.Handler] = None
        self._setup_logging()

    def _setup_logging(self) -> None:
        level = getattr(logging, str(self.config.get('level', 'INFO')).upper(), logging.INFO)
        log_format = self.config.get('format', '%(asctime)s - %(name)s - %(levelname)s - %(message)s')
        log_file = self.config.get('file')
        root = logging.getLogger()
        root.setLevel(min(root.level or level, level))
        if not log_file:
            return
        path = Path(log_file)
        path.parent.mkdir(parents=True, exist_ok=True)
        for existing in root.handlers:
            if isinstance(existing, logging.FileHandler) and Path(existing.baseFilename) == path.resolve():
                self.handler = existing
                return
        self.handler = logging.FileHandler(path)
        self.handler.setLevel(level)
        self.handler.setFormatter(logging.Formatter(log_format))
        root.addHandler(self.handler)
