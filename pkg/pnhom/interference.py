#!/usr/bin/env python
#
# Copyright (c) 2025 The pnhom developers.
# License: 3-clause BSD.  The full license text is available at:
#  - https://github.com/pnhom/pnhom/blob/master/LICENSE
"""
Hong-Ou-Mandel interference of two-mode squeezed vacuum with partial
distinguishability.

Four spatial modes are used.  Modes 0 and 2 carry the two halves of the
squeezed vacuum and interfere on a balanced beam splitter; the part of mode 0
that is distinguishable (not temporally overlapping) is moved to mode 1 and
split on its own onto modes 1 and 3::

    |Psi> = B13(pi/4) B02(pi/4) B01(theta_dis) S02(r) |0>

Detector B counts modes {0, 1}; detector A counts modes {2, 3}.  The
distinguishability angle follows the temporal overlap ``O`` of the two
pulses through ``cos(theta_dis) = O``.
"""

__all__ = ['PulseModel', 'HomConfig', 'overlap_from_delay', 'theta_dis_from_overlap',
           'hom_distribution', 'simulate_hom', 'tmsvs_reference_distribution',
           'smsvs_product_distribution', 'split_tmsvs_distribution',
           'squeeze_from_mean_photon', 'delay_grid']

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.special import comb
from scipy.stats import binom

from ._fock import (SqueezeParams, BeamSplitterSpec, FockError, TruncationError,
                    two_mode_squeezed_vacuum, apply_beam_splitter,
                    joint_number_distribution, required_cutoff)
from .objtypes import JointDistribution
from .logger import logger
from .settings import settings

DETECTOR_A = (2, 3)
DETECTOR_B = (0, 1)


@dataclass(frozen=True)
class PulseModel:
    """Gaussian pulse envelope with intensity full-width-half-maximum in ps"""
    duration_fwhm: float = field(default_factory=lambda: settings['pulse_fwhm'])
    shape: str = 'gaussian'

    def __post_init__(self):
        if not self.duration_fwhm > 0:
            raise FockError('pulse duration must be positive, got %r' % self.duration_fwhm)
        if self.shape != 'gaussian':
            raise FockError('only gaussian pulses are modeled, got %r' % self.shape)


@dataclass(frozen=True)
class HomConfig:
    squeeze: SqueezeParams
    pulse: PulseModel = field(default_factory=PulseModel)
    delay: float = 0.0 # ps
    total_cutoff: int = field(default_factory=lambda: settings['total_cutoff'])

    def __post_init__(self):
        if self.total_cutoff < 4 or self.total_cutoff % 2:
            raise FockError('total cutoff must be even and >= 4, got %r' % self.total_cutoff)


def overlap_from_delay(delay: float, pulse: PulseModel) -> float:
    """temporal overlap of two equal Gaussian pulses delayed by ``delay`` ps

    For normalized amplitude envelopes whose intensity has FWHM ``T``, the
    overlap integral is ``2**(-(delay/T)**2)``.
    """
    return 2.0**(-(delay / pulse.duration_fwhm)**2)


def theta_dis_from_overlap(overlap: float) -> float:
    """distinguishability angle: ``cos(theta_dis) = overlap``"""
    if not (0.0 <= overlap <= 1.0):
        raise FockError('overlap must lie in [0, 1], got %r' % overlap)
    return math.acos(overlap)


def _check_leakage(r, total_cutoff):
    leakage = math.tanh(r)**(2 * (total_cutoff // 2 + 1))
    if leakage > settings['max_leakage']:
        raise TruncationError('truncation leakage %.3g at total cutoff %d exceeds %.3g; '
                              'use a total cutoff of at least %d'
                              % (leakage, total_cutoff, settings['max_leakage'],
                                 required_cutoff(r, settings['max_leakage'])))


def hom_distribution(squeeze: SqueezeParams, theta_dis: float,
                     total_cutoff: int = None) -> JointDistribution:
    """joint photon-number distribution of the four-mode model at a given angle"""
    total_cutoff = settings['total_cutoff'] if total_cutoff is None else total_cutoff
    _check_leakage(squeeze.r, total_cutoff)
    state = two_mode_squeezed_vacuum(squeeze, 0, 2, 4, total_cutoff)
    for spec in (BeamSplitterSpec(0, 1, theta_dis),
                 BeamSplitterSpec(0, 2, math.pi / 4),
                 BeamSplitterSpec(1, 3, math.pi / 4)):
        state = apply_beam_splitter(state, spec)
    dist = joint_number_distribution(state, DETECTOR_A, DETECTOR_B)
    dist.metadata.update(r=squeeze.r, theta_dis=theta_dis, total_cutoff=total_cutoff)
    return dist


def simulate_hom(config: HomConfig) -> JointDistribution:
    """simulate the ideal (lossless) joint photon-number distribution at one delay"""
    overlap = overlap_from_delay(config.delay, config.pulse)
    theta = theta_dis_from_overlap(overlap)
    logger.debug('simulate_hom: delay %g ps, overlap %.6g, theta_dis %.6g',
                 config.delay, overlap, theta)
    dist = hom_distribution(config.squeeze, theta, config.total_cutoff)
    dist.metadata.update(delay=config.delay, overlap=overlap)
    return dist


def _smsvs_probabilities(r: float, cutoff: int) -> np.ndarray:
    n = np.arange(cutoff + 1)
    p = np.zeros(cutoff + 1)
    even = n[::2] // 2
    p[::2] = comb(2 * even, even) / 4.0**even * math.tanh(r)**(2 * even) / math.cosh(r)
    return p


def tmsvs_reference_distribution(squeeze: SqueezeParams, cutoff: int) -> JointDistribution:
    """closed-form ``P(n, n) = tanh(r)**(2n) / cosh(r)**2`` for ``n <= cutoff``"""
    t2 = math.tanh(squeeze.r)**2
    diagonal = t2**np.arange(cutoff + 1) / math.cosh(squeeze.r)**2
    return JointDistribution(np.diag(diagonal), provenance='reference',
                             leakage=t2**(cutoff + 1),
                             metadata={'source': 'tmsv', 'r': squeeze.r})


def smsvs_product_distribution(squeeze: SqueezeParams, cutoff: int,
                               total: bool = False) -> JointDistribution:
    """outer product of two identical single-mode squeezed vacuum distributions

    With ``total=True`` entries with ``n_A + n_B > cutoff`` are dropped, which
    is the truncation a total-photon-number cutoff imposes.
    """
    p = _smsvs_probabilities(squeeze.r, cutoff)
    joint = np.outer(p, p)
    if total:
        n = np.arange(cutoff + 1)
        joint[n[:, None] + n[None, :] > cutoff] = 0.0
    return JointDistribution(joint, provenance='reference',
                             leakage=max(0.0, 1.0 - joint.sum()),
                             metadata={'source': 'smsv-product', 'r': squeeze.r})


def split_tmsvs_distribution(squeeze: SqueezeParams, total_cutoff: int) -> JointDistribution:
    """two-mode squeezed vacuum with each arm split 50:50 onto both detectors

    This is the fully distinguishable limit of the interference model: every
    photon of each arm independently reaches detector A or B.
    """
    size = total_cutoff + 1
    joint = np.zeros((size, size))
    t2 = math.tanh(squeeze.r)**2
    for n in range(total_cutoff // 2 + 1):
        pair = t2**n / math.cosh(squeeze.r)**2
        split = binom.pmf(np.arange(n + 1), n, 0.5)
        to_A = np.convolve(split, split) # photons of both arms sent to A
        for n_A, weight in enumerate(to_A):
            joint[n_A, 2 * n - n_A] += pair * weight
    return JointDistribution(joint, provenance='reference',
                             leakage=t2**(total_cutoff // 2 + 1),
                             metadata={'source': 'split-tmsv', 'r': squeeze.r})


def squeeze_from_mean_photon(mean_photon: float, efficiency: float) -> SqueezeParams:
    """back-calculate ``r = arsinh(sqrt(mean_photon / efficiency))``"""
    if not (0.0 < efficiency <= 1.0):
        raise FockError('efficiency must lie in (0, 1], got %r' % efficiency)
    if mean_photon < 0:
        raise FockError('mean photon number must be >= 0, got %r' % mean_photon)
    return SqueezeParams(math.asinh(math.sqrt(mean_photon / efficiency)))


def delay_grid(span: Optional[float] = None, points: Optional[int] = None) -> np.ndarray:
    """symmetric delay scan in ps, from ``-span`` to ``+span``"""
    span = settings['delay_span'] if span is None else span
    points = settings['delay_points'] if points is None else points
    return np.linspace(-span, span, points)


# EOF
