"""Options shared by every subcommand, and argument value parsers."""

from __future__ import annotations
import argparse

from chatterplan.errors import ParseError

__all__ = ["common_parser", "parse_floats"]


def common_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument(
        "-v",
        "--verbose",
        dest="verbosity",
        action="count",
        default=0,
        help="More logging on stderr; repeat for more",
    )
    parser.add_argument(
        "--tol",
        type=float,
        help="Solver tolerance (default: 1e-12)",
    )
    parser.add_argument(
        "--out",
        help="Output path, '-' for stdout (default: stdout)",
    )
    return parser


def parse_floats(text: str) -> list[float]:
    """
    ##### Examples #####

    ```python
    >>> parse_floats("1, 0,-2.5e-1")
    [1.0, 0.0, -0.25]

    >>> parse_floats("1,,2")
    Traceback (most recent call last):
      ...
    chatterplan.errors.ParseError: expected comma-separated numbers,
        given '1,,2'

    ```
    """
    try:
        return [float(part) for part in text.split(",")]
    except ValueError as error:
        raise ParseError(
            f"expected comma-separated numbers,\n    given {text!r}",
            given=text,
        ) from error
