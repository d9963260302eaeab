#!/usr/bin/env python
#
# Copyright (c) 2025 The pnhom developers.
# License: 3-clause BSD.  The full license text is available at:
#  - https://github.com/pnhom/pnhom/blob/master/LICENSE

import logging
import re
import tempfile
from io import StringIO

import pnhom
from pnhom.logger import stderr_handler, adapter as logger

scan_config = pnhom.ScanConfig(delays=(0.0, 3.0), r=0.1, cutoff=8,
                               chain=pnhom.DetectionChain(0.5, 0.5, 4, 4))

def check_logging(should_trace):
    buffer = StringIO()
    handler = logging.StreamHandler(buffer)
    logger.addHandler(handler)
    try:
        pnhom.run_scan(scan_config)
        if should_trace:
            regex = re.compile(r'(\S*┬ \w.*'                   # open a scan stage
                               r'|│*└ # \w+ \[\d+\.\d ms\])'   # stage done (with time)
                               )
            lines = buffer.getvalue().splitlines()
            assert len(lines) == 2 * 10
            for line in lines:
                assert regex.fullmatch(line), line
            return buffer.getvalue()
        else:
            assert buffer.getvalue() == ""
    finally:
        logger.removeHandler(handler)
        buffer.close()

def check_trace_to_file(stream_trace):
    file = tempfile.NamedTemporaryFile(mode='r')
    with pnhom.logger.trace(file.name, mode='w'):
        pnhom.run_scan(scan_config)
    file_trace = file.read()
    file.close()
    # timings differ between runs
    regtime = re.compile(r' \[\d+\.\d ms\]')
    file_trace, stream_trace = regtime.sub('', file_trace), regtime.sub('', stream_trace)
    assert file_trace == stream_trace

def test_trace():
    logger.removeHandler(stderr_handler)
    try:
        _trace_sequence()
    finally:
        logger.addHandler(stderr_handler)
        pnhom.logger.trace(False)

def _trace_sequence():
    check_logging(should_trace=False)
    pnhom.logger.trace(True)
    check_logging(should_trace=True)
    pnhom.logger.trace(False)
    check_logging(should_trace=False)

    loglevel = logging.ERROR
    logger.setLevel(loglevel)
    with pnhom.logger.trace():
        stream_trace = check_logging(should_trace=True)
    check_logging(should_trace=False)
    assert logger.getEffectiveLevel() == loglevel
    check_trace_to_file(stream_trace)

if __name__ == '__main__':
    test_trace()
