"""
Structured logging for the load event toolkit
"""

import logging
import sys
from datetime import datetime
from pathlib import Path

from src.utils.config import Config

LOG_DIR = Path("logs")
ROOT_LOGGER_NAME = "load_events"


class ToolkitLogger:
    """Centralized logger for all toolkit components"""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
            cls._instance._setup_logger()
        return cls._instance

    def _setup_logger(self):
        """Configure logger with console and optional file handlers"""
        self.logger = logging.getLogger(ROOT_LOGGER_NAME)
        self.logger.setLevel(logging.DEBUG)
        self.logger.propagate = False

        formatter = logging.Formatter(
            '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
            datefmt='%Y-%m-%d %H:%M:%S'
        )

        # stdout is reserved for command output
        self.console_handler = logging.StreamHandler(sys.stderr)
        self.console_handler.setLevel(getattr(logging, Config.LOG_LEVEL.upper(), logging.INFO))
        self.console_handler.setFormatter(formatter)
        self.logger.addHandler(self.console_handler)

        if Config.LOG_TO_FILE:
            LOG_DIR.mkdir(exist_ok=True)
            log_file = LOG_DIR / f"load_events_{datetime.now().strftime('%Y%m%d')}.log"
            file_handler = logging.FileHandler(log_file)
            file_handler.setLevel(logging.DEBUG)
            file_handler.setFormatter(formatter)
            self.logger.addHandler(file_handler)

    def set_console_level(self, level):
        """Change the console handler level (e.g. from a --verbose flag)"""
        self.console_handler.setLevel(level)

    def get_logger(self, name):
        """Get named logger"""
        return logging.getLogger(f"{ROOT_LOGGER_NAME}.{name}")


def get_logger(name):
    """Convenience function to get logger"""
    logger_manager = ToolkitLogger()
    return logger_manager.get_logger(name)
