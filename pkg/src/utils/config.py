"""
Runtime settings read from the environment (and `.env`, loaded by main.py).
"""

import os
from dataclasses import dataclass

DEFAULT_LOG_FILE = os.path.join("logs", "experiment_data.json")
DEFAULT_SEED = 20240101


@dataclass(frozen=True)
class Settings:
    """Process-wide knobs that are not part of any single model run."""
    log_file: str
    threads: int
    seed: int


def _int_from_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"❌ {name} doit être un entier (reçu: {raw!r}). Vérifiez votre fichier .env")


def load_settings() -> Settings:
    """Read GEVMISS_* variables; unset variables fall back to defaults."""
    threads = _int_from_env("GEVMISS_THREADS", 1)
    if threads < 1:
        raise ValueError("❌ GEVMISS_THREADS doit être >= 1")
    return Settings(
        log_file=os.getenv("GEVMISS_LOG_FILE", DEFAULT_LOG_FILE),
        threads=threads,
        seed=_int_from_env("GEVMISS_SEED", DEFAULT_SEED),
    )
