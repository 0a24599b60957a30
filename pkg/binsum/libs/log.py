# binsum/libs/log.py
# ===========================================================================
# RunLog: timestamped, component-prefixed diagnostics
#
#   <YYYY-mm-dd HH:MM:SS> <prefix>: <message>
#
# RULES
#   • Diagnostics never go to stdout; stdout carries reports only.
#   • terminal_logging=True  → stderr
#     terminal_logging=False → append to log_path (truncated once per run)
#   • dbg() lines are dropped unless debug_logging is on
#     (default from BINSUM_DEBUG).
#   • child(prefix) shares the sink and debug setting under a new prefix.
# ===========================================================================

from __future__ import annotations

import os
import sys
from datetime import datetime
from pathlib import Path
from typing import Optional

DEBUG_LOGGING: bool = os.getenv("BINSUM_DEBUG", "").lower() in ("1", "true", "yes", "on")
DEFAULT_LOG_PATH = Path("binsum.log")


class RunLog:
    def __init__(
            self,
            prefix: str = "binsum",
            terminal_logging: bool = True,
            debug_logging: bool = DEBUG_LOGGING,
            log_path: Optional[Path] = None,
            _fresh: bool = True,
    ) -> None:
        self.prefix = prefix
        self.terminal_logging = terminal_logging
        self.debug_logging = debug_logging
        self.log_path = Path(log_path) if log_path is not None else DEFAULT_LOG_PATH

        if not self.terminal_logging and _fresh:
            # Fresh log every run
            self.log_path.write_text("", encoding="utf-8")

    def child(self, prefix: str) -> "RunLog":
        return RunLog(
            prefix=prefix,
            terminal_logging=self.terminal_logging,
            debug_logging=self.debug_logging,
            log_path=self.log_path,
            _fresh=False,
        )

    def log(self, msg: str, debug: bool = False) -> None:
        # Debug suppression
        if debug and not self.debug_logging:
            return

        timestamp = datetime.now().strftime("%Y-%m-%d %H:%M:%S")
        line = f"{timestamp} {self.prefix}: {msg}\n"

        if self.terminal_logging:
            print(line, end="", file=sys.stderr)
            return

        with self.log_path.open("a", encoding="utf-8") as f:
            f.write(line)

    def dbg(self, msg: str) -> None:
        self.log(msg, debug=True)
