"""Process settings from LOBCAL_* environment variables

Read once per process (optionally from a .env file). Command-line flags
such as --threads and --log-level take precedence per invocation.

Variables:
- LOBCAL_LOG_LEVEL, LOBCAL_LOG_FILE
- LOBCAL_THREADS (default: available CPUs)
- LOBCAL_OUTPUT_DIR, LOBCAL_CONFIG_DIR
- LOBCAL_METRICS_ENABLED
"""

import logging
from typing import Optional

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

logger = logging.getLogger(__name__)

LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL')


class Settings(BaseSettings):
    """Defaults shared by every lobcal command

    Usage:
        pool = WorkerPool(get_settings().threads)

    Example:
        # LOBCAL_THREADS=8 LOBCAL_LOG_LEVEL=debug lobcal simulate ...
    """

    model_config = SettingsConfigDict(
        env_prefix='LOBCAL_',
        env_file='.env',
        env_file_encoding='utf-8',
        env_ignore_empty=True,
        extra='ignore',
    )

    log_level: str = Field("INFO", description="One of DEBUG, INFO, WARNING, ERROR, CRITICAL")
    log_file: Optional[str] = Field(None, description="JSON log file (daily rotation); stderr only when unset")
    threads: Optional[int] = Field(
        None,
        ge=1,
        description="Worker processes for replications and objective evaluations"
    )
    output_dir: str = Field("./output", description="Default output directory")
    config_dir: str = Field("./config", description="Directory holding presets.yaml")
    metrics_enabled: bool = Field(True, description="Record Prometheus counters")

    @field_validator('log_level')
    @classmethod
    def normalize_log_level(cls, v: str) -> str:
        level = v.upper()
        if level not in LOG_LEVELS:
            raise ValueError(f'log_level must be one of {list(LOG_LEVELS)}, got: {v}')
        return level


_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """Settings of this process, read from the environment on first use"""
    global _settings
    if _settings is None:
        _settings = Settings()
        logger.debug(
            f"Settings loaded: log_level={_settings.log_level}, threads={_settings.threads or 'auto'}, "
            f"output_dir={_settings.output_dir}, metrics={_settings.metrics_enabled}"
        )
    return _settings


def reset_settings() -> None:
    """Drop the cached instance (tests, changed environment)"""
    global _settings
    _settings = None
