"""
Configuration loader for the load event toolkit
"""

import os
from dotenv import load_dotenv

from src.utils.errors import ArgumentError

# Load .env file
load_dotenv()


class Config:
    """Central configuration management"""

    # System
    LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")
    LOG_TO_FILE = os.getenv("LOG_TO_FILE", "False").lower() == "true"

    # Evaluation
    MATCH_TOLERANCE_S = float(os.getenv("MATCH_TOLERANCE_S", "1.0"))
    SWEEP_WORKERS = int(os.getenv("SWEEP_WORKERS", "1"))

    @classmethod
    def validate(cls):
        """Validate critical config values"""
        if cls.MATCH_TOLERANCE_S < 0:
            raise ArgumentError("MATCH_TOLERANCE_S must be >= 0")
        if cls.SWEEP_WORKERS < 1:
            raise ArgumentError("SWEEP_WORKERS must be >= 1")
        if cls.LOG_LEVEL.upper() not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            raise ArgumentError(f"LOG_LEVEL not recognised: {cls.LOG_LEVEL}")


# Validate on import
Config.validate()
