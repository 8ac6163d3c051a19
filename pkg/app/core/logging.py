import logging
import sys
from typing import Optional

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
TRACE_LOGGER = "app.trace"


def setup_logging(level: str = "WARNING", trace: bool = False, stream=None) -> None:
    """Install a single stderr handler on the app logger."""
    root = logging.getLogger("app")
    root.handlers.clear()
    handler = logging.StreamHandler(stream or sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root.addHandler(handler)
    root.setLevel(getattr(logging, level.upper(), logging.WARNING))
    root.propagate = False

    trace_logger = logging.getLogger(TRACE_LOGGER)
    trace_logger.setLevel(logging.INFO if trace else logging.WARNING)


def get_trace_logger() -> logging.Logger:
    return logging.getLogger(TRACE_LOGGER)


def log_step(kind: str, changed: dict, measure: tuple, logger: Optional[logging.Logger] = None) -> str:
    """Format one engine step as a trace line and emit it."""
    changes = ",".join(f"{v}->{getattr(label, 'value', label)}" for v, label in sorted(changed.items()))
    line = f"{kind} v={changes} measure={measure[0]}/{measure[1]}"
    (logger or get_trace_logger()).info(line)
    return line
