"""
Run logging

One JSON object per record. Records emitted inside a pipeline run carry
the run id, the stage (simulate, weights, calibrate, ...) and the master
seed, so a calibration log can be traced back to its result file.
"""

import json
import logging
from contextvars import ContextVar
from datetime import datetime, timezone
from logging.handlers import TimedRotatingFileHandler
from pathlib import Path
from typing import Any, Dict, Optional


run_id_ctx: ContextVar[str] = ContextVar('run_id', default='')
stage_ctx: ContextVar[str] = ContextVar('stage', default='')
seed_ctx: ContextVar[Optional[int]] = ContextVar('seed', default=None)

# `extra=` keys copied into the JSON object; anything else is dropped
EXTRA_FIELDS = (
    'session', 'replication', 'iteration', 'generation', 'objective',
    'theta', 'elapsed_s', 'condition_number', 'line', 'path', 'count',
)

LOG_BACKUP_DAYS = 30


def _run_fields() -> Dict[str, Any]:
    fields: Dict[str, Any] = {}
    if run_id_ctx.get():
        fields['run_id'] = run_id_ctx.get()
    if stage_ctx.get():
        fields['stage'] = stage_ctx.get()
    # seed 0 is a real seed
    if seed_ctx.get() is not None:
        fields['seed'] = seed_ctx.get()
    return fields


class JSONFormatter(logging.Formatter):
    """Formats a record, the run context and whitelisted extras as JSON"""

    def format(self, record: logging.LogRecord) -> str:
        entry: Dict[str, Any] = {
            'timestamp': datetime.now(timezone.utc).isoformat().replace('+00:00', 'Z'),
            'level': record.levelname,
            'logger': record.name,
            'message': record.getMessage(),
        }
        entry.update(_run_fields())
        entry.update({name: getattr(record, name) for name in EXTRA_FIELDS if hasattr(record, name)})
        if record.exc_info:
            entry['exception'] = self.formatException(record.exc_info)
        return json.dumps(entry, ensure_ascii=False, default=str)


def setup_json_logging(
    log_file: Optional[str] = None,
    log_level: str = "INFO",
    console_output: bool = True
) -> logging.Logger:
    """
    Route the root logger through JSONFormatter

    Replaces any handlers installed by an earlier call.

    Args:
        log_file: Also write to this file, rotated at midnight
        log_level: DEBUG, INFO, WARNING, ERROR or CRITICAL (any case)
        console_output: Write to stderr

    Returns:
        The root logger
    """
    root = logging.getLogger()
    root.setLevel(log_level.upper())
    root.handlers.clear()
    formatter = JSONFormatter()

    handlers: list[logging.Handler] = []
    if log_file:
        Path(log_file).parent.mkdir(parents=True, exist_ok=True)
        handlers.append(TimedRotatingFileHandler(
            log_file, when='midnight', backupCount=LOG_BACKUP_DAYS, encoding='utf-8'
        ))
    if console_output:
        handlers.append(logging.StreamHandler())

    for handler in handlers:
        handler.setFormatter(formatter)
        root.addHandler(handler)
    return root


def set_run_context(run_id: str, stage: str, seed: Optional[int] = None) -> None:
    """Tag subsequent records with the run id, pipeline stage and master seed"""
    run_id_ctx.set(run_id)
    stage_ctx.set(stage)
    seed_ctx.set(seed)


def clear_run_context() -> None:
    run_id_ctx.set('')
    stage_ctx.set('')
    seed_ctx.set(None)
