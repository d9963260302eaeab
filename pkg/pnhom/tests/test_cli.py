#!/usr/bin/env python
#
# Copyright (c) 2025 The pnhom developers.
# License: 3-clause BSD.  The full license text is available at:
#  - https://github.com/pnhom/pnhom/blob/master/LICENSE

import contextlib
import io
import json
import os
import tempfile

from pnhom import SqueezeParams, tmsvs_reference_distribution, write_distribution
from pnhom._cli import main, build_parser
from pnhom.records import SCAN_TABLE_HEADER

CLICKS = '2 2 120\n' + ''.join('%d %d %d\n' % (a, b, 20 if a == b else 10)
                               for a in range(3) for b in range(3))
CONFIG = {'r': 0.2, 'delays': [0.0, 4.0], 'cutoff': 12,
          'chain': {'eta_A': 0.5, 'eta_B': 0.5, 'bins_A': 4, 'bins_B': 4}}


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        status = main(list(argv))
    return status, out.getvalue(), err.getvalue()


def _write(folder, name, text):
    path = os.path.join(folder, name)
    with open(path, 'w') as file:
        file.write(text)
    return path


def test_parser():
    parser = build_parser()
    args = parser.parse_args(['analyze', 'file.txt', '--remove-vacuum', '--max-photons', '2'])
    assert args.command == 'analyze' and args.remove_vacuum and args.max_photons == 2
    args = parser.parse_args(['reproduce', 'fig5a', '--shots', '1000'])
    assert args.preset == 'fig5a' and args.shots == 1000 and args.format == 'table'


def test_simulate():
    with tempfile.TemporaryDirectory() as folder:
        config = _write(folder, 'scan.json', json.dumps(CONFIG))
        status, out, err = run('simulate', '--config', config)
        assert status == 0, err
        lines = out.splitlines()
        assert lines[0] == SCAN_TABLE_HEADER and len(lines) == 4
        assert 'sampled:full:corr:low' not in lines[1]
        status, out, err = run('sample', '--config', config, '--shots', '500', '--seed', '1',
                               '--out', os.path.join(folder, 'run'), '--format', 'structured')
        assert status == 0, err
        assert out.strip().endswith('scan.json')
        doc = json.load(open(out.strip()))
        assert doc['config']['shots'] == 500 and doc['config']['seed'] == 1
        assert 'uncertainty' in doc['records'][0]


def test_reproduce_rejects_unknown_preset():
    try:
        with contextlib.redirect_stderr(io.StringIO()):
            main(['reproduce', 'fig9'])
        assert False
    except SystemExit as error:
        assert error.code == 2


def test_deconvolve_and_analyze_clicks():
    with tempfile.TemporaryDirectory() as folder:
        records = _write(folder, 'clicks.txt', CLICKS)
        status, out, err = run('deconvolve', records)
        assert status == 0, err
        assert out.startswith('# provenance deconvolved\n2 2 photons')
        status, out, err = run('analyze', records, '--resamples', '5', '--seed', '3')
        assert status == 0, err
        lines = out.splitlines()
        assert lines[0] == '# pnhom analysis v1'
        assert lines[1].split()[:4] == ['conditioning', 'corr', 'schmidt_K',
                                        'mutual_information']
        assert 'corr:low' in lines[1].split()
        assert lines[2].split()[0] == 'full'
        status, out, err = run('analyze', records, '--remove-vacuum', '--resamples', '5',
                               '--out', folder, '--format', 'structured')
        assert status == 0, err
        doc = json.load(open(out.strip()))
        assert doc['conditioning'] == 'novac'
        assert set(doc['uncertainty']) == {'corr', 'schmidt_K', 'mutual_information'}


def test_analyze_distribution():
    dist = tmsvs_reference_distribution(SqueezeParams(0.5), 20)
    with tempfile.TemporaryDirectory() as folder:
        path = os.path.join(folder, 'dist.txt')
        write_distribution(dist, path)
        status, out, err = run('analyze', path)
        assert status == 0, err
        row = out.splitlines()[2].split()
        assert row[0] == 'full'
        assert abs(float(row[1]) - 1) < 1e-12
        assert abs(float(row[3]) - 0.2864) < 1e-3


def test_bad_input_exits_2():
    with tempfile.TemporaryDirectory() as folder:
        bad = _write(folder, 'clicks.txt', '1 1 10\n0 0 4\n9 0 3\n')
        status, out, err = run('analyze', bad)
        assert status == 2 and out == ''
        assert err.startswith('pnhom: error: ') and ':3:' in err
        status, out, err = run('deconvolve', os.path.join(folder, 'missing.txt'))
        assert status == 2
        config = _write(folder, 'scan.json', json.dumps(dict(CONFIG, colour='red')))
        status, out, err = run('simulate', '--config', config)
        assert status == 2 and 'colour' in err
        config = _write(folder, 'delays.json', json.dumps(dict(CONFIG, delays=['abc'])))
        status, out, err = run('simulate', '--config', config)
        assert status == 2 and err.startswith('pnhom: error: ') and 'delays' in err
        latin1 = os.path.join(folder, 'latin1.txt')
        with open(latin1, 'wb') as file:
            file.write(b'# caf\xe9\n1 1 10\n')
        status, out, err = run('analyze', latin1)
        assert status == 2 and 'UTF-8' in err


def test_analyze_sparse_clicks_without_vacuum():
    # about a third of the ten-shot resamples have no click at all
    with tempfile.TemporaryDirectory() as folder:
        records = _write(folder, 'clicks.txt', '1 1 10\n0 0 9\n0 1 0\n1 0 0\n1 1 1\n')
        status, out, err = run('analyze', records, '--remove-vacuum', '--resamples', '40',
                               '--seed', '0', '--out', folder, '--format', 'structured')
        assert status == 0, err
        doc = json.load(open(out.strip()))
        assert doc['conditioning'] == 'novac'
        assert 0 < doc['uncertainty']['corr']['dropped'] < 40


if __name__ == '__main__':
    test_parser()
    test_simulate()
    test_reproduce_rejects_unknown_preset()
    test_deconvolve_and_analyze_clicks()
    test_analyze_distribution()
    test_bad_input_exits_2()
    test_analyze_sparse_clicks_without_vacuum()
