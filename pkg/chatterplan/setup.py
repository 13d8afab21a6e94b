from __future__ import annotations
import logging
from typing import Optional

import splatlog
from splatlog.typings import ConsoleHandlerCastable, Level, Verbosity

__all__ = ["VERBOSITY_LEVELS", "setup"]

# -v count -> level for the `chatterplan` logger hierarchy.
VERBOSITY_LEVELS = {
    "chatterplan": (
        (0, logging.WARNING),
        (1, logging.INFO),
        (2, logging.DEBUG),
    ),
}


def setup(
    *,
    level: Optional[Level] = None,
    verbosity: Optional[Verbosity] = None,
    console: ConsoleHandlerCastable = "stderr",
) -> None:
    """
    Logging setup for `chatterplan`: `splatlog.setup` with our verbosity
    levels installed. Console output goes to stderr unless `console` says
    otherwise.
    """
    splatlog.setup(
        level=level,
        verbosity_levels=VERBOSITY_LEVELS,
        verbosity=verbosity,
        console=console,
    )
