#!/usr/bin/env python
#
# Copyright (c) 2025 The pnhom developers.
# License: 3-clause BSD.  The full license text is available at:
#  - https://github.com/pnhom/pnhom/blob/master/LICENSE
"""
Photon-number correlation measures of joint distributions.

Three measures quantify how far ``P(n_A, n_B)`` is from the product of its
marginals: the correlation coefficient, the Schmidt number of the
probability matrix, and the mutual information (base 10).  All three are
computed from the normalized distribution, so truncated distributions may be
passed directly.
"""

__all__ = ['CorrelationReport', 'ConditioningSpec', 'marginals', 'correlation_coefficient',
           'schmidt_number', 'mutual_information', 'g2_zero', 'effective_mode_number',
           'condition_distribution', 'measure_report', 'mean_photon', 'marginal_entropy',
           'MeasureError']

import math
from dataclasses import dataclass, asdict
from typing import Optional, Tuple

import numpy as np
from scipy.special import entr, rel_entr

from ._fock import PnhomError
from .objtypes import JointDistribution
from .logger import logger
from .settings import settings

LN10 = math.log(10.0)


class MeasureError(PnhomError, ValueError):
    pass


@dataclass(frozen=True)
class CorrelationReport:
    corr: float
    schmidt_K: float
    mutual_information: float
    flags: Tuple[str, ...] = ()

    def as_dict(self) -> dict:
        d = asdict(self)
        d['flags'] = list(self.flags)
        return d


@dataclass(frozen=True)
class ConditioningSpec:
    """which photon-number components to drop before the measures are taken"""
    remove_vacuum: bool = False
    max_photons_per_mode: Optional[int] = None

    def __post_init__(self):
        if self.max_photons_per_mode is not None and self.max_photons_per_mode < 1:
            raise MeasureError('max_photons_per_mode must be >= 1, got %r'
                               % self.max_photons_per_mode)

    @property
    def label(self) -> str:
        parts = []
        if self.max_photons_per_mode is not None:
            parts.append('le%d' % self.max_photons_per_mode)
        if self.remove_vacuum:
            parts.append('novac')
        return '-'.join(parts) or 'full'


def _matrix(dist) -> np.ndarray:
    p = dist.probabilities if isinstance(dist, JointDistribution) else np.asarray(dist, float)
    total = p.sum()
    if not total > 0:
        raise MeasureError('distribution has no probability mass')
    return p / total


def marginals(dist: JointDistribution) -> Tuple[np.ndarray, np.ndarray]:
    """get the photon-number distributions of arm A and arm B"""
    p = _matrix(dist)
    return p.sum(axis=1), p.sum(axis=0)


def mean_photon(marginal) -> float:
    marginal = np.asarray(marginal, float)
    return float(np.arange(len(marginal)) @ marginal / marginal.sum())


def _correlation(p: np.ndarray) -> Tuple[float, Tuple[str, ...]]:
    n_A = np.arange(p.shape[0])
    n_B = np.arange(p.shape[1])
    p_A, p_B = p.sum(axis=1), p.sum(axis=0)
    mean_A, mean_B = n_A @ p_A, n_B @ p_B
    var_A = (n_A - mean_A)**2 @ p_A
    var_B = (n_B - mean_B)**2 @ p_B
    flags = tuple(name for name, var in (('degenerate_A', var_A), ('degenerate_B', var_B))
                  if var <= 1e-300)
    if flags:
        logger.debug('correlation coefficient: zero marginal variance %r', flags)
        return 0.0, flags
    cov = (n_A - mean_A) @ p @ (n_B - mean_B)
    return float(np.clip(cov / math.sqrt(var_A * var_B), -1.0, 1.0)), ()


def correlation_coefficient(dist: JointDistribution) -> float:
    """normalized covariance of ``n_A`` and ``n_B``; 0 when a marginal is a point mass"""
    return _correlation(_matrix(dist))[0]


def schmidt_number(dist: JointDistribution, matrix: str = None) -> float:
    """Schmidt number ``K = 1/sum(l_i**2)`` of the probability matrix

    ``l_i`` are the singular values normalized to unit sum.  With
    ``matrix='amplitude'`` the entrywise square root of ``P`` is decomposed
    instead of ``P`` itself.
    """
    matrix = settings['schmidt_matrix'] if matrix is None else matrix
    p = _matrix(dist)
    if matrix == 'amplitude':
        p = np.sqrt(p)
    elif matrix != 'intensity':
        raise MeasureError("schmidt matrix must be 'intensity' or 'amplitude', got %r" % matrix)
    s = np.linalg.svd(p, compute_uv=False)
    weights = s / s.sum()
    return float(1.0 / np.sum(weights**2))


def mutual_information(dist: JointDistribution) -> float:
    """mutual information of ``n_A`` and ``n_B`` in base 10; zero-probability terms add 0"""
    p = _matrix(dist)
    independent = np.outer(p.sum(axis=1), p.sum(axis=0))
    mi = float(np.sum(rel_entr(p, independent)) / LN10)
    return max(mi, 0.0)


def marginal_entropy(marginal) -> float:
    """Shannon entropy in base 10"""
    marginal = np.asarray(marginal, float)
    return float(np.sum(entr(marginal / marginal.sum())) / LN10)


def g2_zero(marginal) -> float:
    """normalized second-order correlation ``<n(n-1)>/<n>**2`` of a photon-number distribution"""
    marginal = np.asarray(marginal, float)
    marginal = marginal / marginal.sum()
    n = np.arange(len(marginal))
    mean = n @ marginal
    if not mean > 0:
        raise MeasureError('g2(0) is undefined for zero mean photon number')
    return float((n * (n - 1)) @ marginal / mean**2)


def effective_mode_number(g2: float) -> float:
    """number of thermal modes ``1/(g2 - 1)`` matching a measured g2(0)"""
    if not (1.0 < g2 <= 2.0 + 1e-9):
        raise MeasureError('g2(0) = %r is outside the thermal model range (1, 2]' % g2)
    return 1.0 / (min(g2, 2.0) - 1.0)


def condition_distribution(dist: JointDistribution, spec: ConditioningSpec) -> JointDistribution:
    """drop components beyond ``max_photons_per_mode`` and/or the vacuum, then renormalize"""
    if spec.max_photons_per_mode is None and not spec.remove_vacuum:
        return dist
    p = np.array(dist.probabilities)
    if spec.max_photons_per_mode is not None:
        p = p[:spec.max_photons_per_mode + 1, :spec.max_photons_per_mode + 1].copy()
    if spec.remove_vacuum:
        p[0, 0] = 0.0
    total = p.sum()
    if not total > 0:
        raise MeasureError('conditioning %r removed all probability mass' % spec.label)
    return dist.derive(p / total, '%s|%s' % (dist.provenance, spec.label), leakage=0.0,
                       metadata={'conditioning': spec.label})


def measure_report(dist: JointDistribution, schmidt_matrix: str = None) -> CorrelationReport:
    """compute all three correlation measures from one distribution"""
    p = _matrix(dist)
    corr, flags = _correlation(p)
    return CorrelationReport(corr, schmidt_number(p, schmidt_matrix),
                             mutual_information(p), flags)


# EOF
