"""Runtime settings read from the environment (and backend/.env when present)."""
import logging
import os
from pathlib import Path

from dotenv import load_dotenv

logger = logging.getLogger(__name__)

env_path = Path(__file__).parent.parent / ".env"
if env_path.exists():
    load_dotenv(dotenv_path=env_path, override=False)
    logger.debug(f"Loaded settings from {env_path}")

# Oracle: max variable count per field before enumeration is refused
ARA_ORACLE_CAP_F2 = int(os.getenv("ARA_ORACLE_CAP_F2", "16"))
ARA_ORACLE_CAP_F3 = int(os.getenv("ARA_ORACLE_CAP_F3", "12"))
ARA_ORACLE_CAP_F5 = int(os.getenv("ARA_ORACLE_CAP_F5", "9"))
ARA_ORACLE_WORKERS = int(os.getenv("ARA_ORACLE_WORKERS", "4"))
ARA_ORACLE_CHUNK = int(os.getenv("ARA_ORACLE_CHUNK", "65536"))

# Builder: hard limit on case-dispatch rounds per component
ARA_BUILDER_MAX_STEPS = int(os.getenv("ARA_BUILDER_MAX_STEPS", "256"))

ARA_DEFAULT_FIELDS = os.getenv("ARA_DEFAULT_FIELDS", "2,3")
ARA_LOG_LEVEL = os.getenv("ARA_LOG_LEVEL", "INFO").upper()

ALLOWED_ORIGINS = [
    origin.strip()
    for origin in os.getenv("ALLOWED_ORIGINS", "http://localhost:3000,http://localhost:8000").split(",")
    if origin.strip()
]


def oracle_cap(p: int) -> int:
    """Variable cap for enumeration over F_p."""
    if p == 2:
        return ARA_ORACLE_CAP_F2
    if p == 3:
        return ARA_ORACLE_CAP_F3
    return ARA_ORACLE_CAP_F5


def default_fields() -> list[int]:
    return [int(p) for p in ARA_DEFAULT_FIELDS.split(",") if p.strip()]
