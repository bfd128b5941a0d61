"""
    Configuration and logging helpers.
"""

from .config_manager import ConfigManager, LogManager, deep_update
