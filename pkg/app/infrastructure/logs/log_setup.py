from __future__ import annotations

import logging
import sys
from typing import Optional

from ...config import Settings
from ...core.errors import UsageError

settings = Settings()

_FORMAT = "%(levelname)s %(name)s %(message)s"


def configure(level: Optional[str] = None) -> None:
    """
    One stderr handler on the ``app`` logger; stdout is reserved for output.
    Safe to call repeatedly.
    """
    name = (level or settings.LOG_LEVEL).upper()
    if not isinstance(logging.getLevelName(name), int):
        raise UsageError(f"unknown log level {level or settings.LOG_LEVEL!r}")
    root = logging.getLogger("app")
    root.setLevel(name)
    if not any(getattr(h, "_antirotor", False) for h in root.handlers):
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(_FORMAT))
        handler._antirotor = True  # type: ignore[attr-defined]
        root.addHandler(handler)
    root.propagate = False
