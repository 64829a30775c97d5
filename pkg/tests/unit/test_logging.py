"""
Unit tests for Structured JSON Logging

Tests the JSON logging implementation in src/utils/logging.py
"""

import json
import logging

import pytest

from src.utils.logging import (
    JSONFormatter,
    clear_run_context,
    run_id_ctx,
    seed_ctx,
    set_run_context,
    setup_json_logging,
    stage_ctx,
)


def make_record(msg='Test message', level=logging.INFO, name='test_logger'):
    return logging.LogRecord(
        name=name,
        level=level,
        pathname='test.py',
        lineno=1,
        msg=msg,
        args=(),
        exc_info=None
    )


@pytest.fixture(autouse=True)
def reset_logging():
    yield
    clear_run_context()
    logging.getLogger().handlers.clear()


class TestJSONFormatter:
    """Test JSON log formatter"""

    def test_basic_json_format(self):
        """Should format log record as valid JSON"""
        log_data = json.loads(JSONFormatter().format(make_record()))

        assert log_data['level'] == 'INFO'
        assert log_data['logger'] == 'test_logger'
        assert log_data['message'] == 'Test message'
        assert log_data['timestamp'].endswith('Z')

    def test_context_variables_inclusion(self):
        """Should include run id, stage and seed when set"""
        set_run_context('run-7', 'calibrate', seed=42)

        log_data = json.loads(JSONFormatter().format(make_record()))

        assert log_data['run_id'] == 'run-7'
        assert log_data['stage'] == 'calibrate'
        assert log_data['seed'] == 42

    def test_context_omitted_when_clear(self):
        """Should leave out empty context fields"""
        log_data = json.loads(JSONFormatter().format(make_record()))

        assert 'run_id' not in log_data
        assert 'stage' not in log_data
        assert 'seed' not in log_data

    def test_seed_zero_kept(self):
        set_run_context('run-0', 'simulate', seed=0)
        assert json.loads(JSONFormatter().format(make_record()))['seed'] == 0

    def test_extra_fields(self):
        """Should include whitelisted extra fields from record"""
        record = make_record()
        record.iteration = 12
        record.objective = 0.5
        record.theta = [0.1, 200.0]
        record.unrelated = 'dropped'

        log_data = json.loads(JSONFormatter().format(record))

        assert log_data['iteration'] == 12
        assert log_data['objective'] == 0.5
        assert log_data['theta'] == [0.1, 200.0]
        assert 'unrelated' not in log_data

    def test_non_serializable_extra(self):
        """Should fall back to str for values json cannot encode"""
        record = make_record()
        record.path = object()

        log_data = json.loads(JSONFormatter().format(record))

        assert log_data['path'].startswith('<object')

    def test_exception_info(self):
        """Should include formatted exception when present"""
        try:
            raise ValueError("boom")
        except ValueError:
            import sys
            record = make_record(level=logging.ERROR)
            record.exc_info = sys.exc_info()

        log_data = json.loads(JSONFormatter().format(record))

        assert 'ValueError: boom' in log_data['exception']


class TestRunContext:
    """Test run context helpers"""

    def test_set_and_clear(self):
        set_run_context('run-1', 'weights', seed=3)
        assert (run_id_ctx.get(), stage_ctx.get(), seed_ctx.get()) == ('run-1', 'weights', 3)

        clear_run_context()
        assert (run_id_ctx.get(), stage_ctx.get(), seed_ctx.get()) == ('', '', None)


class TestSetupJsonLogging:
    """Test logger setup"""

    def test_console_only(self):
        """Should install one JSON stream handler at the given level"""
        logger = setup_json_logging(log_level='debug')

        assert logger.level == logging.DEBUG
        assert len(logger.handlers) == 1
        assert isinstance(logger.handlers[0].formatter, JSONFormatter)

    def test_file_output(self, tmp_path):
        """Should write JSON lines to the log file, creating its directory"""
        log_file = tmp_path / 'logs' / 'lobcal.log'
        logger = setup_json_logging(log_file=str(log_file), console_output=False)

        logging.getLogger('src.engine').info('Simulation done', extra={'count': 3})
        for handler in logger.handlers:
            handler.flush()

        line = json.loads(log_file.read_text().strip().splitlines()[-1])
        assert line['message'] == 'Simulation done'
        assert line['logger'] == 'src.engine'
        assert line['count'] == 3

    def test_repeated_setup_replaces_handlers(self):
        setup_json_logging()
        logger = setup_json_logging()
        assert len(logger.handlers) == 1
