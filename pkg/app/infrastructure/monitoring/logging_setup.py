"""
Structured JSON logging for the workbench.

Every record carries the service name and version so logs from several runs
can be merged. Reports own stdout; the log stream defaults to stderr.
"""

import logging
import sys
from typing import Any, Dict, Optional, TextIO

from pythonjsonlogger import jsonlogger

from app.core.config import settings

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s %(funcName)s %(lineno)d %(message)s"


class ComputationJsonFormatter(jsonlogger.JsonFormatter):
    """JSON formatter tagging each record with the workbench identity."""

    def __init__(self) -> None:
        super().__init__(
            LOG_FORMAT,
            rename_fields={
                "asctime": "timestamp",
                "levelname": "level",
                "name": "logger",
                "funcName": "function",
                "lineno": "line",
            },
        )

    def add_fields(
        self,
        log_record: Dict[str, Any],
        record: logging.LogRecord,
        message_dict: Dict[str, Any],
    ) -> None:
        super().add_fields(log_record, record, message_dict)
        log_record["service"] = settings.PROJECT_NAME
        log_record["version"] = settings.VERSION


def setup_logging(stream: Optional[TextIO] = None) -> None:
    """Route the root logger to a single JSON handler."""
    root = logging.getLogger()
    root.handlers.clear()
    root.setLevel(logging.DEBUG if settings.DEBUG else logging.INFO)

    handler = logging.StreamHandler(stream or sys.stderr)
    handler.setFormatter(ComputationJsonFormatter())
    root.addHandler(handler)


def _emit(logger: logging.Logger, message: str, event: str, fields: Dict[str, Any]) -> None:
    logger.info(message, extra={"event": event, **fields})


def log_computation(
    logger: logging.Logger,
    operation: str,
    preset: Optional[str] = None,
    extra_data: Optional[Dict[str, Any]] = None,
) -> None:
    """Record that a named computation is starting."""
    _emit(logger, f"Starting {operation}", "computation",
          {"operation": operation, "preset": preset, **(extra_data or {})})


def log_performance(
    logger: logging.Logger,
    operation: str,
    duration: float,
    resource: Optional[str] = None,
    extra_data: Optional[Dict[str, Any]] = None,
) -> None:
    """Record how long `operation` took; `duration` is in seconds."""
    fields = {
        "operation": operation,
        "duration_ms": round(duration * 1000, 2),
        "resource": resource,
        **(extra_data or {}),
    }
    _emit(logger, f"{operation} finished", "performance", fields)
