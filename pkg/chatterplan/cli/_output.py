"""
Where command output goes. `-` (the default) is stdout; anything else is a
path, opened with `newline=""` so `csv` controls line endings.
"""

from __future__ import annotations
from contextlib import contextmanager
import sys
from pathlib import Path
from typing import IO, Any, Iterator, Optional

from rich.console import Console
from rich.text import Text

import splatlog

from chatterplan.errors import ChatterplanError
from chatterplan.json import JSONEncoder
from chatterplan.typings import JSONEncoderStyle

__all__ = [
    "STDOUT",
    "stdout_console",
    "stderr_console",
    "open_out",
    "emit_json",
    "report_error",
]

log = splatlog.get_logger(__name__)

STDOUT = "-"


def stdout_console() -> Console:
    return Console(file=sys.stdout)


def stderr_console() -> Console:
    return Console(file=sys.stderr)


@contextmanager
def open_out(path: Optional[str]) -> Iterator[IO[str]]:
    if path is None or path == STDOUT:
        yield sys.stdout
        return
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    with target.open("w", encoding="utf-8", newline="") as fp:
        yield fp
    log.info("Wrote output", path=str(target))


def emit_json(
    obj: Any, path: Optional[str], style: JSONEncoderStyle = "pretty"
) -> None:
    with open_out(path) as fp:
        JSONEncoder.cast(style).dump(obj, fp)
        fp.write("\n")


def report_error(error: ChatterplanError) -> int:
    """
    Log `error` with its data, print `Name: message` to stderr and return
    the exit code for it.
    """
    log.debug("Command failed", error=type(error).__name__, **error.data)
    stderr_console().print(
        Text.assemble((type(error).__name__, "bold red"), ": ", error.message)
    )
    return error.exit_code
