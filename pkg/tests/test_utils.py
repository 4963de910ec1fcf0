import logging

import pytest

from exceptions import ParseError
from utils import log_exceptions, parallel_map, stable_digest


@log_exceptions
def _fails_with(error):
    raise error


def test_engine_errors_are_logged_in_one_line(caplog):
    with caplog.at_level(logging.ERROR), pytest.raises(ParseError):
        _fails_with(ParseError("bad header", path="x.sset", line_number=1))
    [record] = caplog.records
    assert record.getMessage() == "_fails_with: x.sset:1: bad header"
    assert record.exc_info is None


def test_unexpected_errors_keep_traceback(caplog):
    with caplog.at_level(logging.ERROR), pytest.raises(ZeroDivisionError):
        _fails_with(ZeroDivisionError("boom"))
    [record] = caplog.records
    assert record.exc_info is not None


def test_parallel_map_keeps_order():
    assert parallel_map(lambda x: x * x, range(6), threads=3) == [0, 1, 4, 9, 16, 25]


def test_stable_digest():
    assert stable_digest("abc") == stable_digest("abc")
    assert len(stable_digest("abc")) == 16
