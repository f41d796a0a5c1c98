"""
EasyGram Configuration
Desk-scale bounds and runtime knobs, overridable from the environment or a .env file.
"""
import os
import logging

from dotenv import load_dotenv

load_dotenv()

logger = logging.getLogger("EasyGramConfig")


def _env_int(name: str, default: int, minimum: int = 1) -> int:
    raw = os.getenv(name)
    if raw is None or raw == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        logger.warning(f"Ignoring {name}={raw!r}: not an integer, using {default}")
        return default
    if value < minimum:
        logger.warning(f"Ignoring {name}={value}: below {minimum}, using {default}")
        return default
    return value


# --- Parallelism ---
THREADS = _env_int("EASYGRAM_THREADS", os.cpu_count() or 1)

# --- Logging ---
LOG_LEVEL = os.getenv("EASYGRAM_LOG_LEVEL", "WARNING").upper()

# --- Capacity bounds ---
MAX_POINTS = _env_int("EASYGRAM_MAX_POINTS", 16)            # one-row enumeration
MAX_MEMBERS = _env_int("EASYGRAM_MAX_MEMBERS", 250)         # Gram / Weingarten size
MAX_SYMBOLIC_SIZE = _env_int("EASYGRAM_MAX_SYMBOLIC_SIZE", 15)
MAX_TENSOR_ENTRIES = _env_int("EASYGRAM_MAX_TENSOR_ENTRIES", 10**6)
MAX_GROUP_ORDER = _env_int("EASYGRAM_MAX_GROUP_ORDER", 10**6)

# Moment orders: enumeration-based sums vs. counting recursions
MAX_ENUMERATED_ORDER = 12
MAX_COUNTED_ORDER = 128

# --- Reproducibility ---
SEED = _env_int("EASYGRAM_SEED", 0, minimum=0)

# --- Output ---
SCHEMA_VERSION = "1.0"
FLOAT_DIGITS = 12
