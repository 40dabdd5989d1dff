import logging
import os
import sys

from dotenv import load_dotenv
from sympy import factorint

# Load environment variables
load_dotenv()

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


class Settings:
    """Engine settings and configuration"""

    def __init__(self):
        # Application Settings
        self.DEBUG = os.getenv("SHARDLAB_DEBUG", "False").lower() == "true"
        self.LOG_LEVEL = os.getenv("SHARDLAB_LOG_LEVEL", "INFO").upper()
        self.LOG_FILE = os.getenv("SHARDLAB_LOG_FILE", "")

        # Engine limits
        self.GEOMETRY_MAX_RANK = int(os.getenv("GEOMETRY_MAX_RANK", "3"))
        self.CLOSURE_ITERATION_BUDGET = int(os.getenv("CLOSURE_ITERATION_BUDGET", "200000"))
        self.DEGREE2_EXHAUSTIVE_MAX = int(os.getenv("DEGREE2_EXHAUSTIVE_MAX", "48"))
        self.ORACLE_MAX_ELEMENTS = int(os.getenv("ORACLE_MAX_ELEMENTS", "120"))
        self.SQRT_FIELD_D = int(os.getenv("SQRT_FIELD_D", "5"))

        # Output Settings
        self.OUTPUT_DIR = os.getenv("OUTPUT_DIR", "shardlab_out")
        self.JOBS = int(os.getenv("JOBS", "1"))

        # Server Settings
        self.HOST = os.getenv("SHARDLAB_HOST", "127.0.0.1")
        self.PORT = int(os.getenv("PORT", "8765"))
        self.PORT_SEARCH = int(os.getenv("SHARDLAB_PORT_SEARCH", "20"))

    def validate(self) -> bool:
        """Validate settings"""
        if self.LOG_LEVEL not in logging._nameToLevel:
            raise ValueError(f"SHARDLAB_LOG_LEVEL is not a logging level: {self.LOG_LEVEL}")
        if self.GEOMETRY_MAX_RANK < 0:
            raise ValueError("GEOMETRY_MAX_RANK must be non-negative")
        if self.CLOSURE_ITERATION_BUDGET <= 0:
            raise ValueError("CLOSURE_ITERATION_BUDGET must be positive")
        if self.JOBS < 1:
            raise ValueError("JOBS must be at least 1")
        if not 0 < self.PORT < 65536 or self.PORT_SEARCH < 1:
            raise ValueError("PORT must be a TCP port and SHARDLAB_PORT_SEARCH at least 1")
        if self.SQRT_FIELD_D < 2 or max(factorint(self.SQRT_FIELD_D).values()) > 1:
            raise ValueError("SQRT_FIELD_D must be a square-free integer >= 2")
        return True


def setup_logging(level: str = None, log_file: str = None) -> None:
    """Configure root logging the same way for the CLI, the server and run.py"""
    level = (level or settings.LOG_LEVEL).upper()
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)
    log_file = log_file if log_file is not None else settings.LOG_FILE
    if not log_file:
        return
    try:
        directory = os.path.dirname(log_file)
        if directory:
            os.makedirs(directory, exist_ok=True)
        file_handler = logging.FileHandler(log_file)
        file_handler.setLevel(level)
        file_handler.setFormatter(logging.Formatter(LOG_FORMAT))
        logging.getLogger().addHandler(file_handler)
    except Exception as e:
        logging.getLogger(__name__).warning(f"Could not set up file logging: {e}")


# Create a singleton instance
settings = Settings()
