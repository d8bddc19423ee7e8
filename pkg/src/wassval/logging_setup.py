"""
WassVal - Logging setup
"""

import logging
from typing import Optional

from rich.console import Console
from rich.logging import RichHandler

from .config import get_settings


def configure_logging(level: Optional[str] = None, console: Optional[Console] = None) -> None:
    """
    Route package logs through a rich handler.

    Args:
        level: Level name; defaults to Settings.log (env WASSVAL_LOG)
        console: Console to write to (stderr when omitted)
    """
    level_name = (level or get_settings().log).upper()
    handler = RichHandler(
        console=console or Console(stderr=True),
        show_path=False,
        rich_tracebacks=False,
    )
    logging.basicConfig(
        level=getattr(logging, level_name, logging.WARNING),
        format="%(name)s: %(message)s",
        datefmt="[%X]",
        handlers=[handler],
        force=True,
    )
