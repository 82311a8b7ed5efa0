"""
Status lines and logging setup.

The CLI reports progress with short tagged lines ("[info] ...", "[ok] ...")
that can be mirrored into a log file; library modules only use the standard
logging module through ``logging.getLogger(__name__)``.
"""

import os
import sys
import logging
from datetime import datetime
from typing import Optional

TAGS = ("info", "ok", "warn", "error", "skip", "done")

LOG_FORMAT = "%(levelname)s: %(message)s"


def tag(kind: str, message: str) -> str:
    if kind not in TAGS:
        raise ValueError(f"Unknown status tag '{kind}'.")
    return f"[{kind}] {message}"


def log_message(message: str, log_file_path: Optional[str] = None, err: bool = False) -> None:
    """Print a status line and append it (timestamped) to the log file, if any."""
    if err:
        print(message, file=sys.stderr)
    else:
        print(message)
    if not log_file_path:
        return
    parent = os.path.dirname(os.path.abspath(log_file_path))
    os.makedirs(parent, exist_ok=True)
    with open(log_file_path, "a", encoding="utf-8") as f:
        f.write(f"{datetime.now().isoformat(timespec='seconds')} {message}\n")


def configure_logging(verbosity: int = 0) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(level=level, format=LOG_FORMAT)
    logging.getLogger("kouter").setLevel(level)
