#!/usr/bin/env python
#
# Copyright (c) 2025 The pnhom developers.
# License: 3-clause BSD.  The full license text is available at:
#  - https://github.com/pnhom/pnhom/blob/master/LICENSE
"""
Reading and writing click records, distributions, scan configurations and
scan results.

Text formats are line oriented; lines starting with '#' and blank lines are
ignored.  Every text format has a structured (JSON) equivalent carrying a
``schema`` name and a ``version``.  See docs/source/formats.rst.
"""

__all__ = ['ingest_click_records', 'export_click_records', 'read_distribution',
           'write_distribution', 'export_results', 'load_results', 'load_config',
           'config_to_dict', 'validate_scan_document', 'scan_table', 'RecordError',
           'SCAN_TABLE_HEADER', 'SCAN_SCHEMA_VERSION']

import json
import os
import pathlib
from dataclasses import asdict, fields
from typing import Iterator, List, Tuple, Union

import numpy as np

from ._fock import PnhomError
from .objtypes import JointDistribution, ClickHistogram, DetectionChain, DistributionError
from .measures import ConditioningSpec, MeasureError
from .scan import ScanConfig, ScanResult, ConfigError, MEASURES, COMPONENTS
from .interference import delay_grid
from .logger import logger

PathLike = Union[str, os.PathLike]

SCAN_TABLE_HEADER = '# pnhom scan table v1'
SCAN_SCHEMA_VERSION = 1
INT64_MAX = np.iinfo(np.int64).max


class RecordError(PnhomError, ValueError):
    """a malformed record file; ``lineno`` is 1-based (0 when not line specific)"""
    def __init__(self, msg, path=None, lineno=0):
        self.path = None if path is None else str(path)
        self.lineno = lineno
        where = '%s:%d' % (self.path or '<record>', lineno)
        super().__init__('%s: %s' % (where, msg))


def _lines(text: str) -> Iterator[Tuple[int, List[str]]]:
    """yield (line number, fields) of the meaningful lines"""
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if line and not line.startswith('#'):
            yield lineno, line.split()


def _int(token, path, lineno, what):
    try:
        value = int(token, 10)
    except ValueError:
        raise RecordError('%s must be a base-10 integer, got %r' % (what, token),
                          path, lineno) from None
    if value < 0:
        raise RecordError('%s must be nonnegative, got %d' % (what, value), path, lineno)
    return value


def read_text(path: PathLike) -> str:
    """the UTF-8 text of a record file"""
    try:
        return pathlib.Path(path).read_text(encoding='utf-8')
    except UnicodeDecodeError as err:
        raise RecordError('not UTF-8 text (%s)' % err.reason, path) from None


def _is_structured(text: str) -> bool:
    return text.lstrip().startswith('{')


### Click records ###

def _histogram_from_document(doc, path) -> ClickHistogram:
    if doc.get('schema') != 'pnhom.clicks':
        raise RecordError('expected schema "pnhom.clicks", got %r' % doc.get('schema'), path)
    if doc.get('version') != 1:
        raise RecordError('unsupported click record version %r' % doc.get('version'), path)
    try:
        return ClickHistogram(int(doc['bins_A']), int(doc['bins_B']),
                              np.array(doc['counts'], dtype=np.int64), int(doc['total_shots']))
    except KeyError as err:
        raise RecordError('missing key %s' % err, path) from None
    except (DistributionError, TypeError, ValueError, OverflowError) as err:
        raise RecordError(str(err), path) from None


def ingest_click_records(path: PathLike) -> ClickHistogram:
    """read a click histogram from a text or structured click record file

    The text format is a header ``bins_A bins_B total_shots`` followed by one
    line ``k_A k_B count`` for every ``(k_A, k_B)`` with ``k_A <= bins_A`` and
    ``k_B <= bins_B``.
    """
    text = read_text(path)
    if _is_structured(text):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as err:
            raise RecordError(err.msg, path, err.lineno) from None
        return _histogram_from_document(doc, path)
    lines = _lines(text)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise RecordError('empty click record file', path) from None
    if len(header) != 3:
        raise RecordError('header must be "bins_A bins_B total_shots", got %r'
                          % ' '.join(header), path, lineno)
    bins_A, bins_B, total_shots = (_int(t, path, lineno, w) for t, w
                                   in zip(header, ('bins_A', 'bins_B', 'total_shots')))
    if bins_A < 1 or bins_B < 1:
        raise RecordError('detectors need at least one bin', path, lineno)
    if total_shots > INT64_MAX:
        raise RecordError('total_shots %d overflows a 64-bit count' % total_shots, path, lineno)
    counts = np.zeros((bins_A + 1, bins_B + 1), dtype=np.int64)
    seen = np.zeros(counts.shape, dtype=bool)
    running = 0
    for lineno, tokens in lines:
        if len(tokens) != 3:
            raise RecordError('expected "k_A k_B count", got %r' % ' '.join(tokens),
                              path, lineno)
        k_A, k_B, count = (_int(t, path, lineno, w) for t, w
                           in zip(tokens, ('k_A', 'k_B', 'count')))
        if k_A > bins_A or k_B > bins_B:
            raise RecordError('click numbers (%d, %d) exceed bins (%d, %d)'
                              % (k_A, k_B, bins_A, bins_B), path, lineno)
        if seen[k_A, k_B]:
            raise RecordError('duplicate entry for (%d, %d)' % (k_A, k_B), path, lineno)
        running += count
        if running > total_shots:
            raise RecordError('counts overflow total_shots=%d' % total_shots, path, lineno)
        seen[k_A, k_B] = True
        counts[k_A, k_B] = count
    if not seen.all():
        missing = tuple(int(k) for k in np.argwhere(~seen)[0])
        raise RecordError('no entry for clicks %r' % (missing,), path, lineno)
    if running != total_shots:
        raise RecordError('counts sum to %d, header says %d' % (running, total_shots),
                          path, lineno)
    return ClickHistogram(bins_A, bins_B, counts, total_shots)


def export_click_records(hist: ClickHistogram, path: PathLike, format: str = 'table') -> None:
    """write a click histogram as a text table or a structured document"""
    if format == 'structured':
        doc = {'schema': 'pnhom.clicks', 'version': 1, 'bins_A': hist.bins_A,
               'bins_B': hist.bins_B, 'total_shots': hist.total_shots,
               'counts': hist.counts.tolist()}
        pathlib.Path(path).write_text(json.dumps(doc, indent=1) + '\n')
        return
    if format != 'table':
        raise RecordError('unknown click record format %r' % format, path)
    with open(path, 'w') as file:
        file.write('%d %d %d\n' % (hist.bins_A, hist.bins_B, hist.total_shots))
        for (k_A, k_B), count in np.ndenumerate(hist.counts):
            file.write('%d %d %d\n' % (k_A, k_B, count))


### Distributions ###

def _distribution_document(dist: JointDistribution) -> dict:
    return {'kind': dist.kind, 'provenance': dist.provenance, 'leakage': float(dist.leakage),
            'probabilities': dist.probabilities.tolist()}


def write_distribution(dist: JointDistribution, path, format: str = 'table') -> None:
    """write a joint distribution to a path or a writable stream

    The table form is exact: probabilities are written as ``repr`` floats.
    """
    if format == 'structured':
        text = json.dumps(dict(schema='pnhom.distribution', version=1,
                               **_distribution_document(dist))) + '\n'
    elif format == 'table':
        lines = ['# provenance %s' % dist.provenance,
                 '%d %d %s %r' % (dist.max_n_A, dist.max_n_B, dist.kind, float(dist.leakage))]
        lines += ['%d %d %r' % (n_A, n_B, float(p))
                  for (n_A, n_B), p in np.ndenumerate(dist.probabilities)]
        text = '\n'.join(lines) + '\n'
    else:
        raise RecordError('unknown distribution format %r' % format)
    if hasattr(path, 'write'):
        path.write(text)
    else:
        pathlib.Path(path).write_text(text)


def read_distribution(path: PathLike) -> JointDistribution:
    """read a distribution written by ``write_distribution``

    The text header is ``max_n_A max_n_B [kind [leakage]]``; missing entries
    are zero.
    """
    text = read_text(path)
    if _is_structured(text):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as err:
            raise RecordError(err.msg, path, err.lineno) from None
        if doc.get('schema') != 'pnhom.distribution' or doc.get('version') != 1:
            raise RecordError('expected schema "pnhom.distribution" version 1', path)
        try:
            return JointDistribution(np.array(doc['probabilities'], dtype=float),
                                     doc.get('kind', 'photons'),
                                     doc.get('provenance', 'ideal'),
                                     float(doc.get('leakage', 0.0)))
        except KeyError as err:
            raise RecordError('missing key %s' % err, path) from None
        except (DistributionError, TypeError, ValueError) as err:
            raise RecordError(str(err), path) from None
    provenance = 'ideal'
    for line in text.splitlines():
        if line.startswith('# provenance '):
            provenance = line.split(None, 2)[2].strip()
            break
    lines = _lines(text)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise RecordError('empty distribution file', path) from None
    if not 2 <= len(header) <= 4:
        raise RecordError('header must be "max_n_A max_n_B [kind [leakage]]"', path, lineno)
    max_n_A = _int(header[0], path, lineno, 'max_n_A')
    max_n_B = _int(header[1], path, lineno, 'max_n_B')
    kind = header[2] if len(header) > 2 else 'photons'
    try:
        leakage = float(header[3]) if len(header) > 3 else 0.0
    except ValueError:
        raise RecordError('leakage must be a number, got %r' % header[3], path, lineno) from None
    probabilities = np.zeros((max_n_A + 1, max_n_B + 1))
    for lineno, tokens in lines:
        if len(tokens) != 3:
            raise RecordError('expected "n_A n_B probability"', path, lineno)
        n_A = _int(tokens[0], path, lineno, 'n_A')
        n_B = _int(tokens[1], path, lineno, 'n_B')
        if n_A > max_n_A or n_B > max_n_B:
            raise RecordError('entry (%d, %d) outside (%d, %d)' % (n_A, n_B, max_n_A, max_n_B),
                              path, lineno)
        try:
            probabilities[n_A, n_B] = float(tokens[2])
        except ValueError:
            raise RecordError('probability must be a number, got %r' % tokens[2],
                              path, lineno) from None
    try:
        return JointDistribution(probabilities, kind, provenance, leakage)
    except DistributionError as err:
        raise RecordError(str(err), path, lineno) from None


### Scan configuration ###

_CONFIG_KEYS = {f.name for f in fields(ScanConfig)}


def _config_options(doc: dict) -> dict:
    unknown = sorted(set(doc) - _CONFIG_KEYS)
    if unknown:
        raise ConfigError('unknown config keys: %s' % ', '.join(unknown))
    options = dict(doc)
    if isinstance(options.get('delays'), dict):
        grid = dict(options['delays'])
        extra = sorted(set(grid) - {'span', 'points'})
        if extra:
            raise ConfigError('unknown delay grid keys: %s' % ', '.join(extra))
        options['delays'] = tuple(delay_grid(grid.get('span'), grid.get('points')))
    if 'chain' in options:
        try:
            options['chain'] = DetectionChain(**options['chain'])
        except (TypeError, DistributionError) as err:
            raise ConfigError('invalid chain: %s' % err) from None
    if 'conditioning' in options:
        try:
            options['conditioning'] = tuple(ConditioningSpec(**spec)
                                            for spec in options['conditioning'])
        except (TypeError, MeasureError) as err:
            raise ConfigError('invalid conditioning: %s' % err) from None
    return options


def load_config(path: PathLike, **overrides) -> ScanConfig:
    """read a scan configuration document

    The document is a JSON object whose keys are ``ScanConfig`` field names;
    ``delays`` may also be ``{"span": ..., "points": ...}``.  Unknown keys are
    errors.  Keyword ``overrides`` replace document entries.
    """
    try:
        doc = json.loads(read_text(path))
    except RecordError as err:
        raise ConfigError(str(err)) from None
    except json.JSONDecodeError as err:
        raise ConfigError('%s:%d: %s' % (path, err.lineno, err.msg)) from None
    if not isinstance(doc, dict):
        raise ConfigError('%s: a scan configuration must be a JSON object' % path)
    try:
        options = _config_options(doc)
        options.update(overrides)
        return ScanConfig(**options)
    except ConfigError:
        raise
    except (TypeError, ValueError) as err:
        raise ConfigError('%s: %s' % (path, err)) from None


def config_to_dict(config: ScanConfig) -> dict:
    """the configuration document that ``load_config`` turns back into ``config``"""
    doc = asdict(config)
    doc['delays'] = list(config.delays)
    doc['conditioning'] = [asdict(spec) for spec in config.conditioning]
    return doc


### Scan results ###

def _table_columns(result: ScanResult) -> List[str]:
    columns = ['delay', 'overlap']
    for path in result.paths:
        for label in result.labels:
            columns += ['%s:%s:%s' % (path, label, name) for name in MEASURES]
    columns += list(COMPONENTS) + ['unresolved_mass']
    if result.records and result.records[0].uncertainty:
        for label in result.labels:
            for name in MEASURES:
                columns += ['sampled:%s:%s:%s' % (label, name, end) for end in ('low', 'high')]
    if result.records and result.records[0].band:
        for label in result.labels:
            for name in MEASURES:
                columns += ['band:%s:%s:%s' % (label, name, end) for end in ('low', 'high')]
    return columns


def _table_row(result: ScanResult, record) -> List[float]:
    row = [record.delay, record.overlap]
    for path in result.paths:
        for label in result.labels:
            report = record.reports[path][label]
            row += [getattr(report, name) for name in MEASURES]
    row += [record.components[name] for name in COMPONENTS] + [record.unresolved_mass]
    if record.uncertainty:
        for label in result.labels:
            for name in MEASURES:
                interval = record.uncertainty[label][name]
                row += [interval.low, interval.high]
    if record.band:
        for label in result.labels:
            for name in MEASURES:
                row += list(record.band[label][name])
    return row


def _jsonable(value):
    if isinstance(value, DetectionChain):
        return asdict(value)
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, tuple):
        return list(value)
    return value


def _scan_document(result: ScanResult) -> dict:
    records = []
    for record in result:
        entry = {'delay': record.delay, 'overlap': record.overlap,
                 'components': dict(record.components),
                 'unresolved_mass': record.unresolved_mass,
                 'reports': {path: {label: report.as_dict()
                                    for label, report in by_label.items()}
                             for path, by_label in record.reports.items()},
                 'distributions': {stage: _distribution_document(dist)
                                   for stage, dist in record.distributions().items()}}
        if record.uncertainty:
            entry['uncertainty'] = {label: {name: asdict(interval)
                                            for name, interval in intervals.items()}
                                    for label, intervals in record.uncertainty.items()}
        if record.band:
            entry['band'] = {label: {name: list(bounds) for name, bounds in band.items()}
                             for label, band in record.band.items()}
        if record.histogram is not None:
            entry['histogram'] = record.histogram.counts.tolist()
        records.append(entry)
    return {'schema': 'pnhom.scan', 'version': SCAN_SCHEMA_VERSION,
            'config': config_to_dict(result.config),
            'metadata': {key: _jsonable(value) for key, value in result.metadata.items()},
            'records': records}


def validate_scan_document(doc: dict) -> dict:
    """check a structured scan document against schema "pnhom.scan" version 1"""
    def fail(msg):
        raise RecordError('invalid scan document: %s' % msg)
    if not isinstance(doc, dict):
        fail('not an object')
    if doc.get('schema') != 'pnhom.scan':
        fail('schema is %r' % doc.get('schema'))
    if doc.get('version') != SCAN_SCHEMA_VERSION:
        fail('version is %r' % doc.get('version'))
    for key, kind in (('config', dict), ('metadata', dict), ('records', list)):
        if not isinstance(doc.get(key), kind):
            fail('%r must be a %s' % (key, kind.__name__))
    for i, record in enumerate(doc['records']):
        for key in ('delay', 'overlap', 'components', 'reports', 'distributions',
                    'unresolved_mass'):
            if key not in record:
                fail('record %d lacks %r' % (i, key))
        if set(record['components']) != set(COMPONENTS):
            fail('record %d components are %r' % (i, sorted(record['components'])))
        if not 0.0 <= record['unresolved_mass'] <= 1.0:
            fail('record %d unresolved mass is out of range' % i)
        for path, by_label in record['reports'].items():
            for label, report in by_label.items():
                if set(report) != set(MEASURES) | {'flags'}:
                    fail('record %d report %s/%s has keys %r'
                         % (i, path, label, sorted(report)))
                if not -1.0 <= report['corr'] <= 1.0 or report['mutual_information'] < 0:
                    fail('record %d report %s/%s is out of range' % (i, path, label))
        for stage, dist in record['distributions'].items():
            if set(dist) != {'kind', 'provenance', 'leakage', 'probabilities'}:
                fail('record %d distribution %r has keys %r' % (i, stage, sorted(dist)))
    return doc


def scan_table(result: ScanResult) -> str:
    """the per-delay measures table, one row per delay in scan order"""
    lines = [SCAN_TABLE_HEADER, ' '.join(_table_columns(result))]
    for record in result:
        lines.append(' '.join(repr(float(v)) for v in _table_row(result, record)))
    return '\n'.join(lines) + '\n'


def export_results(result: ScanResult, path: PathLike, format: str = 'table') -> List[str]:
    """write scan results into the directory ``path``

    ``format='table'`` writes ``measures.txt`` (one row per delay) and
    ``distributions.txt`` (``delay stage n_A n_B probability``);
    ``'structured'`` writes ``scan.json``; ``'session'`` pickles the whole
    ``ScanResult`` to ``scan.pkl`` for ``load_results``.  Returns the paths
    written.
    """
    outdir = pathlib.Path(path)
    outdir.mkdir(parents=True, exist_ok=True)
    if format == 'table':
        measures, distributions = outdir / 'measures.txt', outdir / 'distributions.txt'
        measures.write_text(scan_table(result))
        with open(distributions, 'w') as file:
            file.write('# delay stage n_A n_B probability\n')
            for record in result:
                for stage, dist in record.distributions().items():
                    for (n_A, n_B), p in np.ndenumerate(dist.probabilities):
                        if p:
                            file.write('%r %s %d %d %r\n' % (record.delay, stage, n_A, n_B,
                                                            float(p)))
        written = [measures, distributions]
    elif format == 'structured':
        written = [outdir / 'scan.json']
        doc = validate_scan_document(_scan_document(result))
        written[0].write_text(json.dumps(doc) + '\n')
    elif format == 'session':
        import dill
        written = [outdir / 'scan.pkl']
        with open(written[0], 'wb') as file:
            dill.dump(result, file)
    else:
        raise RecordError('unknown export format %r' % format)
    logger.info('exported %d delays to %s', len(result), ', '.join(map(str, written)))
    return [str(name) for name in written]


def load_results(path: PathLike) -> Union[ScanResult, dict]:
    """load exported results: a ``ScanResult`` from a session pickle, or the
    validated document of a structured export

    ``path`` is the exported file or the directory it was exported to.
    """
    path = pathlib.Path(path)
    if path.is_dir():
        for name in ('scan.pkl', 'scan.json'):
            if (path / name).exists():
                path = path / name
                break
        else:
            raise RecordError('no scan.pkl or scan.json in %s' % path)
    if path.suffix == '.pkl':
        import dill
        with open(path, 'rb') as file:
            result = dill.load(file)
        if not isinstance(result, ScanResult):
            raise RecordError('%s does not hold a scan result' % path)
        return result
    try:
        doc = json.loads(read_text(path))
    except json.JSONDecodeError as err:
        raise RecordError(err.msg, path, err.lineno) from None
    return validate_scan_document(doc)


# EOF
