#!/usr/bin/env python
#
# Copyright (c) 2025 The pnhom developers.
# License: 3-clause BSD.  The full license text is available at:
#  - https://github.com/pnhom/pnhom/blob/master/LICENSE
"""
Delay scans: the full pipeline from squeezed vacuum to correlation measures.

For every delay ``run_scan`` simulates the ideal four-mode output, applies
the detection loss, convolves with the click response, deconvolves back to
photon numbers and evaluates the correlation measures on each of these
paths for every requested conditioning.  With ``shots`` set, the click
distribution is also sampled shot by shot and the sampled path gets
bootstrap uncertainties.

Delay points are independent and may be evaluated in parallel; records are
always returned in the order of ``config.delays``.
"""

__all__ = ['ScanConfig', 'ScanRecord', 'ScanResult', 'Interval', 'run_scan',
           'bootstrap_uncertainty', 'preset', 'PRESETS', 'MEASURES', 'COMPONENTS',
           'ScanError', 'ConfigError']

import functools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from types import SimpleNamespace
from typing import Dict, List, Optional, Tuple

import numpy as np

from ._fock import PnhomError, SqueezeParams
from .objtypes import JointDistribution, ClickHistogram, DetectionChain
from .interference import (PulseModel, HomConfig, simulate_hom, overlap_from_delay,
                           squeeze_from_mean_photon, tmsvs_reference_distribution,
                           delay_grid)
from .detect import (apply_loss, clicks_from_photons, deconvolve_clicks, sample_clicks,
                     LAB_CHAIN, DetectionError)
from .measures import (ConditioningSpec, CorrelationReport, condition_distribution,
                       measure_report, MeasureError)
from .logger import adapter, logger
from .settings import settings

MEASURES = ('corr', 'schmidt_K', 'mutual_information')
COMPONENTS = {'P11': (1, 1), 'P22': (2, 2), 'P20': (2, 0), 'P02': (0, 2)}


class ScanError(PnhomError):
    """a pipeline stage failed at one delay point"""
    def __init__(self, msg, delay=None):
        super().__init__(msg)
        self.delay = delay

class ConfigError(PnhomError, ValueError):
    pass


@dataclass(frozen=True)
class Interval:
    """bootstrap percentiles and spread; ``dropped`` resamples had no mass left to measure"""
    low: float
    high: float
    std: float
    dropped: int = 0


def _lossless():
    return DetectionChain(1.0, 1.0, settings['bins'], settings['bins'])


@dataclass(frozen=True)
class ScanConfig:
    """parameters of a delay scan

    The squeezing is given either directly as ``r`` or as a measured
    ``mean_photon`` number with the ``efficiency`` it was measured through
    (default: the arm A transmission of ``chain``).  ``mean_photon_sigma``
    adds an analytic band from the squeezing at ``mean_photon +/- sigma``.
    """
    delays: Tuple[float, ...] = field(default_factory=lambda: tuple(delay_grid()))
    r: Optional[float] = None
    mean_photon: Optional[float] = None
    efficiency: Optional[float] = None
    mean_photon_sigma: Optional[float] = None
    pulse_fwhm: float = field(default_factory=lambda: settings['pulse_fwhm'])
    chain: DetectionChain = field(default_factory=_lossless)
    cutoff: int = field(default_factory=lambda: settings['total_cutoff'])
    shots: Optional[int] = None
    seed: int = 0
    conditioning: Tuple[ConditioningSpec, ...] = (ConditioningSpec(),)
    resamples: int = field(default_factory=lambda: settings['resamples'])
    workers: int = field(default_factory=lambda: settings['workers'])
    name: str = 'custom'

    def __post_init__(self):
        try:
            object.__setattr__(self, 'delays', tuple(float(d) for d in self.delays))
        except (TypeError, ValueError):
            raise ConfigError('delays must be numbers in ps, got %r' % (self.delays,)) from None
        object.__setattr__(self, 'conditioning', tuple(self.conditioning))
        if not self.delays:
            raise ConfigError('a scan needs at least one delay')
        if (self.r is None) == (self.mean_photon is None):
            raise ConfigError('give exactly one of r and mean_photon')
        if self.mean_photon_sigma is not None and self.mean_photon is None:
            raise ConfigError('mean_photon_sigma needs mean_photon')
        if self.shots is not None and self.shots < 1:
            raise ConfigError('shots must be >= 1 when given, got %r' % self.shots)
        if self.resamples < 2:
            raise ConfigError('resamples must be >= 2, got %r' % self.resamples)
        if self.workers < 1:
            raise ConfigError('workers must be >= 1, got %r' % self.workers)
        labels = [spec.label for spec in self.conditioning]
        if not labels or len(set(labels)) != len(labels):
            raise ConfigError('conditioning variants must be nonempty and distinct, got %r'
                              % labels)
        try:
            self.squeeze
            HomConfig(self.squeeze, PulseModel(self.pulse_fwhm), 0.0, self.cutoff)
        except PnhomError as err:
            raise ConfigError(str(err)) from err

    def squeeze_at(self, mean_photon: float = None) -> SqueezeParams:
        if self.r is not None:
            return SqueezeParams(self.r)
        efficiency = self.chain.eta_A if self.efficiency is None else self.efficiency
        return squeeze_from_mean_photon(self.mean_photon if mean_photon is None
                                        else mean_photon, efficiency)

    @property
    def squeeze(self) -> SqueezeParams:
        return self.squeeze_at()


@dataclass(eq=False)
class ScanRecord:
    """everything computed at one delay

    ``reports[path][label]`` holds the measures of one pipeline path
    ('ideal', 'lossy', 'deconvolved', and 'sampled' in Monte Carlo mode)
    under one conditioning variant.  ``components`` are taken from the lossy
    distribution.  ``uncertainty[label][measure]`` are bootstrap intervals of
    the sampled path; ``band[label][measure]`` is the analytic (low, high)
    range over the mean photon number uncertainty.  ``unresolved_mass`` is
    the lossy photon-number mass above the detector bin counts, which
    deconvolution cannot recover.
    """
    index: int
    delay: float
    overlap: float
    ideal: JointDistribution
    lossy: JointDistribution
    clicks: JointDistribution
    deconvolved: JointDistribution
    reports: Dict[str, Dict[str, CorrelationReport]]
    components: Dict[str, float]
    sampled: Optional[JointDistribution] = None
    histogram: Optional[ClickHistogram] = None
    uncertainty: Optional[Dict[str, Dict[str, Interval]]] = None
    band: Optional[Dict[str, Dict[str, Tuple[float, float]]]] = None
    unresolved_mass: float = 0.0

    def report(self, path: str = 'lossy', label: str = 'full') -> CorrelationReport:
        return self.reports[path][label]

    def distributions(self) -> Dict[str, JointDistribution]:
        stages = {'ideal': self.ideal, 'lossy': self.lossy, 'clicks': self.clicks,
                  'deconvolved': self.deconvolved}
        if self.sampled is not None:
            stages['sampled'] = self.sampled
        return stages


@dataclass(eq=False)
class ScanResult:
    config: ScanConfig
    records: List[ScanRecord]
    metadata: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def __getitem__(self, index) -> ScanRecord:
        return self.records[index]

    @property
    def delays(self) -> np.ndarray:
        return np.array([record.delay for record in self.records])

    @property
    def paths(self) -> Tuple[str, ...]:
        return tuple(self.records[0].reports) if self.records else ()

    @property
    def labels(self) -> Tuple[str, ...]:
        return tuple(spec.label for spec in self.config.conditioning)

    def measure(self, name: str, path: str = 'lossy', label: str = None) -> np.ndarray:
        """get one correlation measure over the scan"""
        label = self.labels[0] if label is None else label
        return np.array([getattr(record.reports[path][label], name) for record in self.records])

    def component(self, name: str) -> np.ndarray:
        return np.array([record.components[name] for record in self.records])


def bootstrap_uncertainty(hist: ClickHistogram, resamples: int = None, seed=0,
                          percentiles: Tuple[float, float] = None,
                          conditioning: ConditioningSpec = None,
                          chain: DetectionChain = None,
                          schmidt_matrix: str = None) -> Dict[str, Interval]:
    """multinomial bootstrap of the correlation measures of a click histogram

    Each resample draws ``total_shots`` shots from the empirical click
    frequencies, is deconvolved with ``chain`` (when given) and conditioned,
    and the measures are evaluated.  Returns an ``Interval`` per measure with
    the requested percentiles (default 16/84) and the standard deviation.
    A resample that the conditioning (or deconvolution) leaves without mass
    is skipped and counted in ``Interval.dropped``; at least two must remain.
    """
    if hist.total_shots <= 0:
        raise ScanError('cannot bootstrap an empty click histogram')
    resamples = settings['resamples'] if resamples is None else resamples
    if resamples < 2:
        raise ScanError('bootstrap needs at least 2 resamples, got %r' % resamples)
    percentiles = settings['percentiles'] if percentiles is None else percentiles
    conditioning = ConditioningSpec() if conditioning is None else conditioning
    frequencies = (hist.counts / hist.total_shots).ravel()
    draws = np.random.default_rng(seed).multinomial(hist.total_shots, frequencies,
                                                     size=resamples)
    values: Dict[str, list] = {name: [] for name in MEASURES}
    dropped = 0
    for counts in draws:
        sample = ClickHistogram(hist.bins_A, hist.bins_B, counts.reshape(hist.counts.shape),
                                hist.total_shots)
        try:
            dist = sample.frequencies() if chain is None else deconvolve_clicks(sample, chain)
            report = measure_report(condition_distribution(dist, conditioning), schmidt_matrix)
        except (MeasureError, DetectionError) as err:
            logger.debug('bootstrap: skipped resample (%s)', err)
            dropped += 1
            continue
        for name in MEASURES:
            values[name].append(getattr(report, name))
    if resamples - dropped < 2:
        raise ScanError('bootstrap kept %d of %d resamples under conditioning %r'
                        % (resamples - dropped, resamples, conditioning.label))
    intervals = {}
    for name, vals in values.items():
        low, high = np.percentile(vals, percentiles)
        intervals[name] = Interval(float(low), float(high), float(np.std(vals)), dropped)
    return intervals


def _reports(dist: JointDistribution, conditioning) -> Dict[str, CorrelationReport]:
    return {spec.label: measure_report(condition_distribution(dist, spec))
            for spec in conditioning}


def _band(config: ScanConfig, hom: HomConfig, reports, squeezes):
    values = {spec.label: {name: [getattr(reports[spec.label], name)] for name in MEASURES}
              for spec in config.conditioning}
    for squeeze in squeezes:
        ideal = simulate_hom(HomConfig(squeeze, hom.pulse, hom.delay, hom.total_cutoff))
        lossy = apply_loss(ideal, config.chain.eta_A, config.chain.eta_B)
        for label, report in _reports(lossy, config.conditioning).items():
            for name in MEASURES:
                values[label][name].append(getattr(report, name))
    return {label: {name: (min(vals), max(vals)) for name, vals in measures.items()}
            for label, measures in values.items()}


def _evaluate(config: ScanConfig, squeeze, band_squeezes, index, delay, point) -> ScanRecord:
    chain = config.chain
    pulse = PulseModel(config.pulse_fwhm)
    hom = HomConfig(squeeze, pulse, delay, config.cutoff)
    overlap = overlap_from_delay(delay, pulse)
    adapter.trace(point, "D%d: delay %g ps (overlap %.4g)", index, delay, overlap)

    adapter.trace(point, "S%d: simulate 4 modes, cutoff %d", index, config.cutoff)
    ideal = simulate_hom(hom)
    adapter.trace(point, "# S%d", index)

    adapter.trace(point, "L%d: loss eta_A=%g eta_B=%g", index, chain.eta_A, chain.eta_B)
    lossy = apply_loss(ideal, chain.eta_A, chain.eta_B)
    adapter.trace(point, "# L%d", index)

    adapter.trace(point, "C%d: clicks over %dx%d bins", index, chain.bins_A, chain.bins_B)
    clicks = clicks_from_photons(lossy, chain)
    deconvolved = deconvolve_clicks(clicks, chain)
    adapter.trace(point, "# C%d", index)

    paths = {'ideal': ideal, 'lossy': lossy, 'deconvolved': deconvolved}
    sampled = histogram = uncertainty = None
    if config.shots:
        adapter.trace(point, "R%d: sample %d shots", index, config.shots)
        workers = config.workers if len(config.delays) == 1 else 1
        histogram = sample_clicks(clicks, config.shots, (config.seed, index, 0), workers=workers)
        sampled = paths['sampled'] = deconvolve_clicks(histogram, chain)
        uncertainty = {spec.label: bootstrap_uncertainty(histogram, config.resamples,
                                                         (config.seed, index, 1),
                                                         conditioning=spec, chain=chain)
                       for spec in config.conditioning}
        adapter.trace(point, "# R%d", index)

    adapter.trace(point, "M%d: measures (%d paths, %d variants)", index, len(paths),
                  len(config.conditioning))
    reports = {path: _reports(dist, config.conditioning) for path, dist in paths.items()}
    band = None
    if band_squeezes:
        band = _band(config, hom, reports['lossy'], band_squeezes)
    adapter.trace(point, "# M%d", index)

    components = {name: lossy[n] for name, n in COMPONENTS.items()}
    adapter.trace(point, "# D%d", index)
    return ScanRecord(index, delay, overlap, ideal, lossy, clicks, deconvolved, reports,
                      components, sampled, histogram, uncertainty, band,
                      clicks.metadata['unresolved_mass'])


def _scan_point(config, squeeze, band_squeezes, job) -> ScanRecord:
    index, delay = job
    point = adapter.trace_setup(SimpleNamespace(index=index, delay=delay))
    try:
        return _evaluate(config, squeeze, band_squeezes, index, delay, point)
    except PnhomError as err:
        raise ScanError('delay %g ps: %s' % (delay, err), delay) from err


def _scan_metadata(config: ScanConfig, squeeze: SqueezeParams, records) -> dict:
    from . import __version__
    metadata = {'name': config.name, 'r': squeeze.r, 'mean_photon': config.mean_photon,
                'chain': config.chain, 'cutoff': config.cutoff, 'seed': config.seed,
                'shots_per_delay': config.shots, 'pnhom_version': __version__}
    if config.name in PRESETS and 'delays' not in PRESETS[config.name]:
        metadata['grid'] = 'default %d points over +/-%g ps' \
                           % (settings['delay_points'], settings['delay_span'])
    if len(records) > 1:
        delays = np.abs([record.delay for record in records])
        p11 = [record.components['P11'] for record in records]
        near, far = int(np.argmin(delays)), int(np.argmax(delays))
        if p11[far] > 0:
            metadata['visibility'] = 1.0 - p11[near] / p11[far]
    reference = apply_loss(tmsvs_reference_distribution(squeeze, config.cutoff // 2),
                           config.chain.eta_A, config.chain.eta_B)
    metadata['tmsvs_reference'] = {'P%d%d' % (n, n): reference[n, n] for n in (1, 2, 3)}
    return metadata


def run_scan(config: ScanConfig) -> ScanResult:
    """evaluate the pipeline at every delay of ``config``"""
    squeeze = config.squeeze
    band_squeezes = ()
    if config.mean_photon_sigma:
        sigma = config.mean_photon_sigma
        band_squeezes = tuple(config.squeeze_at(max(config.mean_photon + s * sigma, 0.0))
                              for s in (-1, 1))
    evaluate = functools.partial(_scan_point, config, squeeze, band_squeezes)
    jobs = list(enumerate(config.delays))
    if config.workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            records = list(pool.map(evaluate, jobs))
    else:
        records = [evaluate(job) for job in jobs]
    return ScanResult(config, records, _scan_metadata(config, squeeze, records))


### Presets ###

_OPERATING_POINT = dict(mean_photon=0.060, efficiency=0.20, chain=LAB_CHAIN)

PRESETS = {
    'operating-point': dict(_OPERATING_POINT, mean_photon_sigma=0.008,
                            delays=(-10.0, 0.0, 10.0)),
    'fig3': dict(_OPERATING_POINT, mean_photon_sigma=0.008),
    'fig4': dict(_OPERATING_POINT),
    # two-photon subspace with the vacuum removed
    'fig5a': dict(_OPERATING_POINT, conditioning=(ConditioningSpec(True, 2),)),
    # vacuum removed only
    'fig5b': dict(_OPERATING_POINT, conditioning=(ConditioningSpec(True),)),
}


def preset(name: str, **overrides) -> ScanConfig:
    """get a named scan configuration, with keyword overrides"""
    try:
        options = dict(PRESETS[name])
    except KeyError:
        raise ConfigError('unknown preset %r; choose from %s'
                          % (name, ', '.join(sorted(PRESETS)))) from None
    options.update(overrides)
    return ScanConfig(name=name, **options)


# EOF
