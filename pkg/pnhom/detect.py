#!/usr/bin/env python
#
# Copyright (c) 2025 The pnhom developers.
# License: 3-clause BSD.  The full license text is available at:
#  - https://github.com/pnhom/pnhom/blob/master/LICENSE
"""
Methods for the measurement chain: loss, time-multiplexed click detection,
shot sampling and deconvolution of click statistics.

All loss is folded into per-arm totals applied to the ideal distribution.
The loss measured before the interference is the same in both arms, and a
balanced loss on every input commutes with every beam splitter of the
interference model, so this gives the same photon statistics as placing it
before the beam splitters.
"""

__all__ = ['apply_loss', 'loss_matrix', 'tmd_convolution_matrix', 'clicks_from_photons',
           'deconvolve_clicks', 'sample_clicks', 'loss_budget', 'mean_clicks',
           'unresolved_mass',
           'LAB_STAGES', 'LAB_TOTALS', 'LAB_CHAIN', 'DetectionError']

import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Union

import numpy as np
from scipy.linalg import solve_triangular
from scipy.special import stirling2
from scipy.stats import binom

from ._fock import PnhomError
from .objtypes import JointDistribution, ClickHistogram, DetectionChain
from .logger import logger
from .settings import settings


class DetectionError(PnhomError, ValueError):
    pass


# measured stage transmissions: free space before the beam splitter, TMD, detectors
LAB_STAGES = {'pre': 0.35, 'tmd': 0.60, 'detector_A': 0.94, 'detector_B': 0.70}
# stated total transmissions (value, uncertainty)
LAB_TOTALS = {'A': (0.20, 0.06), 'B': (0.14, 0.06)}
LAB_CHAIN = DetectionChain(eta_A=0.20, eta_B=0.14, bins_A=8, bins_B=8)


def loss_budget(*transmissions: float) -> float:
    """total transmission of a chain of lossy stages"""
    return reduce(lambda a, b: a * b, transmissions, 1.0)


@lru_cache(maxsize=128)
def _loss_matrix(eta: float, max_n: int) -> np.ndarray:
    if eta == 1.0:
        matrix = np.eye(max_n + 1)
    else:
        m, n = np.meshgrid(np.arange(max_n + 1), np.arange(max_n + 1), indexing='ij')
        matrix = binom.pmf(m, n, eta)
    matrix.setflags(write=False)
    return matrix


def loss_matrix(eta: float, max_n: int) -> np.ndarray:
    """binomial loss channel: entry ``[m, n]`` is the chance ``m`` of ``n`` photons survive"""
    if not (0.0 < eta <= 1.0):
        raise DetectionError('transmission must lie in (0, 1], got %r' % eta)
    return _loss_matrix(float(eta), int(max_n))


def apply_loss(dist: JointDistribution, eta_A: float, eta_B: float) -> JointDistribution:
    """apply independent binomial loss to each arm of a photon-number distribution"""
    if dist.kind != 'photons':
        raise DetectionError('loss acts on photon numbers, not %s' % dist.kind)
    L_A = loss_matrix(eta_A, dist.max_n_A)
    L_B = loss_matrix(eta_B, dist.max_n_B)
    lossy = L_A @ dist.probabilities @ L_B.T
    etas = dist.metadata.get('eta', (1.0, 1.0))
    return dist.derive(np.clip(lossy, 0.0, None), 'lossy',
                       metadata={'eta': (etas[0] * eta_A, etas[1] * eta_B)})


@lru_cache(maxsize=64)
def _convolution_matrix(bins: int, max_n: int) -> np.ndarray:
    matrix = np.zeros((bins + 1, max_n + 1))
    for n in range(max_n + 1):
        for k in range(min(n, bins) + 1):
            ways = math.perm(bins, k) * int(stirling2(n, k, exact=True))
            matrix[k, n] = float(Fraction(ways, bins**n))
    matrix.setflags(write=False)
    return matrix


def tmd_convolution_matrix(bins: int, max_n: int) -> np.ndarray:
    """click response of a time-multiplexed detector with equal bins

    Entry ``[k, n]`` is the chance that ``n`` photons, each landing in one of
    ``bins`` bins uniformly and independently, occupy exactly ``k`` bins:
    ``bins!/(bins-k)! * S2(n, k) / bins**n``.
    """
    if bins < 1:
        raise DetectionError('a detector needs at least one bin, got %r' % bins)
    return _convolution_matrix(int(bins), int(max_n))


def unresolved_mass(dist: JointDistribution, chain: DetectionChain) -> float:
    """probability of more photons in an arm than its detector has bins

    Deconvolution recovers photon numbers up to the bin count only; this mass
    ends up spread over lower photon numbers.
    """
    p = dist.normalized()
    resolved = p[:chain.bins_A + 1, :chain.bins_B + 1].sum()
    return float(max(0.0, 1.0 - resolved))


def clicks_from_photons(dist: JointDistribution, chain: DetectionChain) -> JointDistribution:
    """map a (lossy) photon-number distribution to joint click probabilities

    ``metadata['unresolved_mass']`` carries the photon-number mass above the
    bin counts, which the click statistics cannot give back.
    """
    if dist.kind != 'photons':
        raise DetectionError('expected a photon-number distribution, got %s' % dist.kind)
    C_A = tmd_convolution_matrix(chain.bins_A, dist.max_n_A)
    C_B = tmd_convolution_matrix(chain.bins_B, dist.max_n_B)
    clicks = C_A @ dist.probabilities @ C_B.T
    residual = unresolved_mass(dist, chain)
    if residual > 1e-9:
        logger.debug('clicks_from_photons: %.3g of the mass exceeds (%d, %d) bins',
                     residual, chain.bins_A, chain.bins_B)
    return dist.derive(np.clip(clicks, 0.0, None), 'clicks', kind='clicks',
                       metadata={'chain': chain, 'unresolved_mass': residual})


def mean_clicks(dist: JointDistribution):
    """mean number of clicks (or photons) in arm A and arm B"""
    p = dist.normalized()
    return (float(np.arange(p.shape[0]) @ p.sum(axis=1)),
            float(np.arange(p.shape[1]) @ p.sum(axis=0)))


def deconvolve_clicks(clicks: Union[JointDistribution, ClickHistogram],
                      chain: DetectionChain) -> JointDistribution:
    """recover photon-number statistics (``n <= bins``) from click statistics

    The square click response of each arm is upper triangular with a positive
    diagonal, so it is inverted exactly.  Negative entries left by noise are
    clamped to zero and the result renormalized; the clamped mass is reported
    as ``metadata['negative_mass']``.  Photon numbers above the bin count
    cannot be recovered; clicks made by ``clicks_from_photons`` carry that
    mass forward as ``metadata['unresolved_mass']``.
    """
    if isinstance(clicks, ClickHistogram):
        clicks = clicks.frequencies()
    if clicks.kind != 'clicks':
        raise DetectionError('expected a click distribution, got %s' % clicks.kind)
    if clicks.max_n_A > chain.bins_A or clicks.max_n_B > chain.bins_B:
        raise DetectionError('clicks up to (%d, %d) exceed detector bins (%d, %d)'
                             % (clicks.max_n_A, clicks.max_n_B, chain.bins_A, chain.bins_B))
    Q = np.zeros((chain.bins_A + 1, chain.bins_B + 1))
    Q[:clicks.max_n_A + 1, :clicks.max_n_B + 1] = clicks.probabilities
    C_A = tmd_convolution_matrix(chain.bins_A, chain.bins_A)
    C_B = tmd_convolution_matrix(chain.bins_B, chain.bins_B)
    half = solve_triangular(C_A, Q, lower=False)
    P = solve_triangular(C_B, half.T, lower=False).T
    negative_mass = float(-P[P < 0].sum())
    P = np.clip(P, 0.0, None)
    total = P.sum()
    if total <= 0:
        raise DetectionError('deconvolution left no probability mass')
    if negative_mass > 1e-9:
        logger.debug('deconvolve_clicks: clamped negative mass %.3g', negative_mass)
    return clicks.derive(P / total, 'deconvolved', kind='photons', leakage=0.0,
                         metadata={'negative_mass': negative_mass, 'chain': chain})


def _sample_chunk(args):
    seed, shots, pvals = args
    return np.random.default_rng(seed).multinomial(shots, pvals)


def sample_clicks(dist: JointDistribution, shots: int, seed: int,
                  workers: int = None, chunk_shots: int = None) -> ClickHistogram:
    """sample a click histogram shot by shot from a click distribution

    Shots are drawn in chunks of ``chunk_shots``; chunk ``c`` uses the
    ``c``-th child of ``SeedSequence(seed)``, so the histogram depends only
    on the seed and the chunk size, never on the number of workers.
    """
    if dist.kind != 'clicks':
        raise DetectionError('expected a click distribution, got %s' % dist.kind)
    if shots < 1:
        raise DetectionError('need at least one shot, got %r' % shots)
    workers = settings['workers'] if workers is None else workers
    chunk_shots = settings['chunk_shots'] if chunk_shots is None else chunk_shots
    pvals = dist.normalized().ravel()
    sizes = [chunk_shots] * (shots // chunk_shots)
    if shots % chunk_shots:
        sizes.append(shots % chunk_shots)
    seeds = np.random.SeedSequence(seed).spawn(len(sizes))
    jobs = [(s, n, pvals) for s, n in zip(seeds, sizes)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            draws = list(pool.map(_sample_chunk, jobs))
    else:
        draws = [_sample_chunk(job) for job in jobs]
    counts = np.sum(draws, axis=0).reshape(dist.probabilities.shape)
    return ClickHistogram(dist.max_n_A, dist.max_n_B, counts, int(shots))


# EOF
