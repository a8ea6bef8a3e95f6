from __future__ import annotations
import os
from functools import cached_property
from pathlib import Path


class Settings:
    """
    Centralised runtime configuration pulled from environment variables.
    """

    # ---- Numerics ------------------------------------------------------
    TOLERANCE: float = float(os.getenv("ANTIROTOR_TOL", "1e-10"))
    FD_STEP: float = float(os.getenv("ANTIROTOR_FD_STEP", "1e-5"))

    # ---- Invariants ----------------------------------------------------
    RANK_GRID: int = int(os.getenv("ANTIROTOR_RANK_GRID", "2"))
    EXACT_RANK_MAX_N: int = int(os.getenv("ANTIROTOR_EXACT_RANK_MAX_N", "6"))

    # ---- Harness -------------------------------------------------------
    TRIAL_DIM_CAP: int = int(os.getenv("ANTIROTOR_TRIAL_DIM_CAP", "4"))
    SEED: int = int(os.getenv("ANTIROTOR_SEED", "20240729"))
    WORKERS: int = int(os.getenv("ANTIROTOR_WORKERS", "1"))

    # -------------------------------------------------------------------
    LOG_LEVEL: str = os.getenv("ANTIROTOR_LOG_LEVEL", "WARNING").upper()
    REGISTRY_YAML: str = os.getenv(
        "ANTIROTOR_REGISTRY_YAML",
        str(Path(__file__).parent / "core" / "algebra" / "registry.yml"),
    )

    # convenience
    @cached_property
    def check_threshold(self) -> float:
        return 10.0 * self.TOLERANCE
