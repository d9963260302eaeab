#!/usr/bin/env python
#
# Copyright (c) 2025 The pnhom developers.
# License: 3-clause BSD.  The full license text is available at:
#  - https://github.com/pnhom/pnhom/blob/master/LICENSE
"""
command line interface: ``pnhom <command> [options]``

    simulate     analytic delay scan (from --config, else the 'fig3' preset)
    sample       delay scan with Monte Carlo click sampling and bootstrap
    deconvolve   click record file -> photon-number distribution file
    analyze      distribution or click record file -> correlation measures
    reproduce    run a named preset: fig3, fig4, fig5a, fig5b, operating-point

Exit status is 0 on success and 2 when any input fails validation.
"""

__all__ = ['main', 'build_parser']

import argparse
import json
import pathlib
import sys
from dataclasses import asdict, replace

from ._fock import PnhomError
from .objtypes import DetectionChain, ClickHistogram
from .detect import deconvolve_clicks
from .measures import ConditioningSpec, measure_report, condition_distribution
from .scan import PRESETS, MEASURES, preset, run_scan, bootstrap_uncertainty
from .records import (ingest_click_records, read_distribution, write_distribution,
                      load_config, export_results, scan_table, read_text)
from . import logger

SAMPLE_SHOTS = 10**6


def _scan_options(parser):
    parser.add_argument('--config', help='scan configuration document (JSON)')
    parser.add_argument('--seed', type=int, help='seed for sampling and bootstrap')
    parser.add_argument('--workers', type=int, help='delay points evaluated in parallel')
    _output_options(parser)


def _output_options(parser):
    parser.add_argument('--out', help='output directory (default: print the table)')
    parser.add_argument('--format', choices=('table', 'structured', 'session'),
                        default='table', help='output format')


def _conditioning_options(parser):
    parser.add_argument('--remove-vacuum', action='store_true',
                        help='drop the (0, 0) component before the measures')
    parser.add_argument('--max-photons', type=int,
                        help='drop components with more photons per arm')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='pnhom', description=__doc__.split('\n')[1],
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument('--trace', action='store_true', help='trace the scan on stderr')
    commands = parser.add_subparsers(dest='command', metavar='command')
    commands.required = True

    simulate = commands.add_parser('simulate', help='analytic delay scan')
    _scan_options(simulate)

    sample = commands.add_parser('sample', help='delay scan with Monte Carlo clicks')
    _scan_options(sample)
    sample.add_argument('--shots', type=int, help='shots per delay (default %d)' % SAMPLE_SHOTS)

    deconvolve = commands.add_parser('deconvolve', help='click records -> distribution')
    deconvolve.add_argument('records', help='click record file')
    deconvolve.add_argument('--bins', type=int, help='time bins per detector')
    _output_options(deconvolve)

    analyze = commands.add_parser('analyze', help='correlation measures of a file')
    analyze.add_argument('input', help='distribution or click record file')
    analyze.add_argument('--bins', type=int, help='time bins per detector (click records)')
    analyze.add_argument('--seed', type=int, default=0, help='bootstrap seed (click records)')
    analyze.add_argument('--resamples', type=int, help='bootstrap resamples (click records)')
    _conditioning_options(analyze)
    _output_options(analyze)

    reproduce = commands.add_parser('reproduce', help='run a named preset scan')
    reproduce.add_argument('preset', choices=sorted(PRESETS))
    _scan_options(reproduce)
    reproduce.add_argument('--shots', type=int, help='also sample this many shots per delay')
    return parser


def _scan_config(args, name=None):
    overrides = {key: getattr(args, key) for key in ('seed', 'workers', 'shots')
                 if getattr(args, key, None) is not None}
    if args.config:
        return load_config(args.config, **overrides)
    return preset(name or 'fig3', **overrides)


def _emit_scan(result, args):
    if args.out:
        for name in export_results(result, args.out, args.format):
            print(name)
    else:
        sys.stdout.write(scan_table(result))


def _simulate(args):
    config = _scan_config(args)
    if config.shots is not None:
        config = replace(config, shots=None)
    _emit_scan(run_scan(config), args)


def _sample(args):
    config = _scan_config(args)
    if config.shots is None:
        config = replace(config, shots=SAMPLE_SHOTS)
    _emit_scan(run_scan(config), args)


def _reproduce(args):
    _emit_scan(run_scan(_scan_config(args, args.preset)), args)


def _chain(hist: ClickHistogram, bins):
    return DetectionChain(1.0, 1.0, bins or hist.bins_A, bins or hist.bins_B)


def _deconvolve(args):
    hist = ingest_click_records(args.records)
    dist = deconvolve_clicks(hist, _chain(hist, args.bins))
    if args.format == 'session':
        raise PnhomError('a distribution is written as table or structured, not session')
    if args.out:
        outdir = pathlib.Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        name = outdir / ('deconvolved.json' if args.format == 'structured' else 'deconvolved.txt')
        write_distribution(dist, name, args.format)
        print(name)
    else:
        write_distribution(dist, sys.stdout, args.format)


def _is_click_record(path) -> bool:
    text = read_text(path)
    if text.lstrip().startswith('{'):
        try:
            return json.loads(text).get('schema') == 'pnhom.clicks'
        except (ValueError, AttributeError):
            return False
    for line in text.splitlines():
        tokens = line.split()
        if tokens and not tokens[0].startswith('#'):
            return len(tokens) == 3 and tokens[2].isdigit()
    return False


def _analyze(args):
    spec = ConditioningSpec(args.remove_vacuum, args.max_photons)
    intervals = None
    if _is_click_record(args.input):
        hist = ingest_click_records(args.input)
        chain = _chain(hist, args.bins)
        dist = deconvolve_clicks(hist, chain)
        intervals = bootstrap_uncertainty(hist, args.resamples, args.seed,
                                          conditioning=spec, chain=chain)
    else:
        dist = read_distribution(args.input)
    report = measure_report(condition_distribution(dist, spec))
    columns = ['conditioning'] + list(MEASURES)
    row = [spec.label] + [repr(getattr(report, name)) for name in MEASURES]
    if intervals:
        for name in MEASURES:
            columns += ['%s:low' % name, '%s:high' % name]
            row += [repr(intervals[name].low), repr(intervals[name].high)]
    text = '# pnhom analysis v1\n%s\n%s\n' % (' '.join(columns), ' '.join(row))
    if report.flags:
        text += '# flags %s\n' % ' '.join(report.flags)
    if args.out:
        outdir = pathlib.Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        if args.format == 'structured':
            doc = {'schema': 'pnhom.analysis', 'version': 1, 'conditioning': spec.label,
                   'report': report.as_dict()}
            if intervals:
                doc['uncertainty'] = {name: asdict(interval) for name, interval in intervals.items()}
            name = outdir / 'analysis.json'
            name.write_text(json.dumps(doc) + '\n')
        else:
            name = outdir / 'analysis.txt'
            name.write_text(text)
        print(name)
    else:
        sys.stdout.write(text)


COMMANDS = {'simulate': _simulate, 'sample': _sample, 'deconvolve': _deconvolve,
            'analyze': _analyze, 'reproduce': _reproduce}


def main(argv=None) -> int:
    """run the command line; returns the exit status"""
    args = build_parser().parse_args(argv)
    if args.trace:
        logger.trace(True)
    try:
        COMMANDS[args.command](args)
    except (PnhomError, OSError) as err:
        print('pnhom: error: %s' % err, file=sys.stderr)
        return 2
    finally:
        if args.trace:
            logger.trace(False)
    return 0


if __name__ == '__main__':
    sys.exit(main())
