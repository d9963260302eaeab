#!/usr/bin/env python
#
# Copyright (c) 2025 The pnhom developers.
# License: 3-clause BSD.  The full license text is available at:
#  - https://github.com/pnhom/pnhom/blob/master/LICENSE
"""
Truncated multimode Fock space: states, squeezed vacuum and beam splitters.

States live on all occupation tuples ``(n_0, ..., n_{m-1})`` with total photon
number at most ``total_cutoff``.  Tuples are enumerated in graded
lexicographic order (by total photon number, then lexicographically), so a
beam splitter only ever mixes amplitudes inside one total-photon-number sector.

Beam-splitter convention, for ``B_ij(theta) = exp(theta (a_i a_j^+ - a_i^+ a_j))``::

    B a_i^+ B^-1 =  cos(theta) a_i^+ + sin(theta) a_j^+
    B a_j^+ B^-1 = -sin(theta) a_i^+ + cos(theta) a_j^+

Probabilities do not depend on this choice; amplitude-level signs do.
"""

__all__ = ['FockVector', 'SqueezeParams', 'BeamSplitterSpec', 'basis', 'vacuum',
           'fock_state', 'two_mode_squeezed_vacuum', 'single_mode_squeezed_vacuum',
           'apply_beam_splitter', 'beam_splitter_block', 'number_distribution',
           'joint_number_distribution', 'required_cutoff',
           'PnhomError', 'PnhomWarning', 'FockError', 'TruncationError',
           'TruncationWarning']

import math
import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from types import SimpleNamespace
from typing import Dict, Iterator, Optional, Sequence, Tuple

import numpy as np
from scipy.special import comb

from .logger import logger
from .settings import settings


class PnhomError(Exception):
    pass

class PnhomWarning(Warning):
    pass

class FockError(PnhomError, ValueError):
    pass

class TruncationError(FockError):
    pass

class TruncationWarning(PnhomWarning):
    pass


### Basis ###

def _compositions(total: int, modes: int) -> Iterator[Tuple[int, ...]]:
    """occupation tuples of ``modes`` modes summing to ``total``, lexicographic"""
    if modes == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, modes - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def basis(num_modes: int, total_cutoff: int) -> SimpleNamespace:
    """get the graded-lexicographic basis of a truncated Fock space

    Returns a namespace with ``states`` (int array, one row per tuple),
    ``index`` (dict of tuple -> row) and ``totals`` (photons per row).
    """
    if num_modes < 1:
        raise FockError('need at least one mode, got %r' % num_modes)
    if total_cutoff < 0:
        raise FockError('cutoff must be nonnegative, got %r' % total_cutoff)
    states = [occ for total in range(total_cutoff + 1)
                  for occ in _compositions(total, num_modes)]
    index = {occ: row for row, occ in enumerate(states)}
    states = np.array(states, dtype=np.int64).reshape(len(states), num_modes)
    states.setflags(write=False)
    totals = states.sum(axis=1)
    totals.setflags(write=False)
    return SimpleNamespace(states=states, index=index, totals=totals)


@lru_cache(maxsize=None)
def _pair_sectors(num_modes: int, total_cutoff: int, i: int, j: int):
    """group basis rows by (spectator occupations, photons in modes i and j)

    Returns a tuple of ``(N, rows)``; column ``k`` of ``rows`` is the basis
    row with ``n_i = k`` and ``n_j = N - k``.  Every basis row appears once.
    """
    space = basis(num_modes, total_cutoff)
    groups: Dict[int, list] = {}
    for occ in space.index:
        if occ[i]:
            continue
        pair_total = occ[j]
        row = []
        spec = list(occ)
        for k in range(pair_total + 1):
            spec[i], spec[j] = k, pair_total - k
            row.append(space.index[tuple(spec)])
        groups.setdefault(pair_total, []).append(row)
    return tuple((total, np.array(rows, dtype=np.int64))
                 for total, rows in sorted(groups.items()))


### Values ###

@dataclass(frozen=True)
class SqueezeParams:
    """squeezing ``xi = r exp(i phi)``; only ``phi = 0`` is used in scans"""
    r: float
    phi: float = 0.0

    def __post_init__(self):
        if not (self.r >= 0 and math.isfinite(self.r)):
            raise FockError('squeezing parameter must be finite and >= 0, got %r' % self.r)


@dataclass(frozen=True)
class BeamSplitterSpec:
    mode_i: int
    mode_j: int
    theta: float

    def __post_init__(self):
        if self.mode_i == self.mode_j:
            raise FockError('beam splitter needs two distinct modes, got %r twice' % self.mode_i)
        if not (0.0 <= self.theta <= math.pi / 2 + 1e-15):
            raise FockError('beam splitter angle must lie in [0, pi/2], got %r' % self.theta)


@dataclass(frozen=True, eq=False)
class FockVector:
    """a pure state on the truncated Fock space ``basis(num_modes, total_cutoff)``

    ``amplitudes[row]`` is the amplitude of ``basis(...).states[row]``.
    ``leakage`` is the probability lost to truncation, ``|1 - norm**2|``.
    """
    num_modes: int
    total_cutoff: int
    amplitudes: np.ndarray
    leakage: float = 0.0
    metadata: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        amplitudes = np.asarray(self.amplitudes, dtype=complex)
        size = len(basis(self.num_modes, self.total_cutoff).states)
        if amplitudes.shape != (size,):
            raise FockError('expected %d amplitudes, got shape %r' % (size, amplitudes.shape))
        amplitudes.setflags(write=False)
        object.__setattr__(self, 'amplitudes', amplitudes)

    @property
    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.amplitudes)**2)))

    def amplitude(self, occupation: Sequence[int]) -> complex:
        """get the amplitude of an occupation tuple (0 outside the truncation)"""
        occupation = tuple(int(n) for n in occupation)
        if len(occupation) != self.num_modes:
            raise FockError('occupation %r does not have %d modes' % (occupation, self.num_modes))
        row = basis(self.num_modes, self.total_cutoff).index.get(occupation)
        return 0j if row is None else complex(self.amplitudes[row])

    def items(self) -> Iterator[Tuple[Tuple[int, ...], complex]]:
        """iterate over (occupation, amplitude) pairs with nonzero amplitude"""
        states = basis(self.num_modes, self.total_cutoff).states
        for row in np.flatnonzero(self.amplitudes):
            yield tuple(int(n) for n in states[row]), complex(self.amplitudes[row])


def _check_modes(num_modes, *modes):
    for mode in modes:
        if not (0 <= mode < num_modes):
            raise FockError('mode %r out of range for %d modes' % (mode, num_modes))


def _check_cutoff(total_cutoff):
    if total_cutoff < 2 or total_cutoff % 2:
        raise FockError('total cutoff must be even and >= 2, got %r' % total_cutoff)


def _flag_truncation(state: FockVector, bound: Optional[float]) -> FockVector:
    bound = settings['max_leakage'] if bound is None else bound
    if state.leakage > bound:
        msg = 'truncation leakage %.3g exceeds %.3g at total cutoff %d' \
              % (state.leakage, bound, state.total_cutoff)
        state.metadata.setdefault('warnings', []).append(msg)
        warnings.warn(msg, TruncationWarning, stacklevel=3)
    return state


def required_cutoff(r: float, leakage: float = None) -> int:
    """smallest even total cutoff that keeps two-mode squeezed vacuum leakage below ``leakage``

    The leakage at cutoff ``N`` is ``tanh(r)**(2*(N//2 + 1))``.
    """
    leakage = settings['max_leakage'] if leakage is None else leakage
    t2 = math.tanh(r)**2
    if t2 == 0.0:
        return 2
    if t2 >= 1.0 or leakage <= 0.0:
        raise FockError('no finite cutoff reaches leakage %r at r=%r' % (leakage, r))
    pairs = max(1, math.ceil(math.log(leakage) / math.log(t2)) - 1)
    return 2 * pairs


def vacuum(num_modes: int, total_cutoff: int = None) -> FockVector:
    total_cutoff = settings['total_cutoff'] if total_cutoff is None else total_cutoff
    return fock_state((0,) * num_modes, total_cutoff)


def fock_state(occupation: Sequence[int], total_cutoff: int = None) -> FockVector:
    """get the number state ``|n_0, ..., n_{m-1}>``"""
    occupation = tuple(int(n) for n in occupation)
    total_cutoff = settings['total_cutoff'] if total_cutoff is None else total_cutoff
    if min(occupation) < 0 or sum(occupation) > total_cutoff:
        raise FockError('occupation %r outside cutoff %d' % (occupation, total_cutoff))
    space = basis(len(occupation), total_cutoff)
    amplitudes = np.zeros(len(space.states), dtype=complex)
    amplitudes[space.index[occupation]] = 1.0
    return FockVector(len(occupation), total_cutoff, amplitudes)


def two_mode_squeezed_vacuum(params: SqueezeParams, mode_i: int, mode_j: int,
                             num_modes: int, total_cutoff: int = None,
                             leakage_bound: float = None) -> FockVector:
    """squeeze the vacuum of modes ``i`` and ``j`` into a two-mode squeezed vacuum

    Amplitudes are the closed form ``(-1)**n exp(i n phi) tanh(r)**n / cosh(r)``
    on ``|n>_i |n>_j`` for ``2 n <= total_cutoff``.  The dropped tail
    ``tanh(r)**(2 (n_max + 1))`` is recorded as ``leakage``; leakage above
    ``leakage_bound`` (default: ``settings['max_leakage']``) raises a
    TruncationWarning and is listed in ``metadata['warnings']``.
    """
    total_cutoff = settings['total_cutoff'] if total_cutoff is None else total_cutoff
    _check_cutoff(total_cutoff)
    _check_modes(num_modes, mode_i, mode_j)
    if mode_i == mode_j:
        raise FockError('two-mode squeezing needs two distinct modes')
    space = basis(num_modes, total_cutoff)
    t = math.tanh(params.r)
    n_max = total_cutoff // 2
    amplitudes = np.zeros(len(space.states), dtype=complex)
    occ = [0] * num_modes
    for n in range(n_max + 1):
        occ[mode_i] = occ[mode_j] = n
        coeff = (-t)**n * np.exp(1j * n * params.phi) / math.cosh(params.r)
        amplitudes[space.index[tuple(occ)]] = coeff
    leakage = t**(2 * (n_max + 1))
    state = FockVector(num_modes, total_cutoff, amplitudes, leakage,
                       {'source': 'tmsv', 'r': params.r, 'phi': params.phi})
    logger.debug('two-mode squeezed vacuum r=%g on modes (%d,%d): leakage %.3g',
                 params.r, mode_i, mode_j, leakage)
    return _flag_truncation(state, leakage_bound)


def single_mode_squeezed_vacuum(params: SqueezeParams, mode_i: int, num_modes: int,
                                total_cutoff: int = None,
                                leakage_bound: float = None) -> FockVector:
    """squeeze the vacuum of mode ``i``; support only on even photon numbers

    ``|<2n|psi>|**2 = (2n)!/(2**(2n) (n!)**2) tanh(r)**(2n) / cosh(r)``
    """
    total_cutoff = settings['total_cutoff'] if total_cutoff is None else total_cutoff
    _check_cutoff(total_cutoff)
    _check_modes(num_modes, mode_i)
    space = basis(num_modes, total_cutoff)
    t = math.tanh(params.r)
    amplitudes = np.zeros(len(space.states), dtype=complex)
    occ = [0] * num_modes
    for n in range(total_cutoff // 2 + 1):
        occ[mode_i] = 2 * n
        weight = math.sqrt(comb(2 * n, n) / 4.0**n)
        coeff = weight * (-t)**n * np.exp(1j * n * params.phi) / math.sqrt(math.cosh(params.r))
        amplitudes[space.index[tuple(occ)]] = coeff
    leakage = max(0.0, 1.0 - float(np.sum(np.abs(amplitudes)**2)))
    state = FockVector(num_modes, total_cutoff, amplitudes, leakage,
                       {'source': 'smsv', 'r': params.r, 'phi': params.phi})
    return _flag_truncation(state, leakage_bound)


### Beam splitter ###

@lru_cache(maxsize=64)
def _beam_splitter_blocks(theta: float, total_cutoff: int) -> Tuple[np.ndarray, ...]:
    # Column n of block N is B|n, N-n>, built one transformed creation
    # operator at a time from block N-1:
    #   B|n, N-n> = b_i^+ B|n-1, N-n> / sqrt(n)      (n >= 1)
    #   B|0, N>   = b_j^+ B|0, N-1> / sqrt(N)
    c, s = math.cos(theta), math.sin(theta)
    blocks = [np.ones((1, 1))]
    for total in range(1, total_cutoff + 1):
        prev = blocks[-1]
        m = np.arange(total + 1)
        up = np.sqrt(m)              # a_i^+ : m-1 -> m
        keep = np.sqrt(total - m)    # a_j^+ : m -> m
        block = np.zeros((total + 1, total + 1))
        for n in range(total + 1):
            v = np.zeros(total + 2)
            v[1:total + 1] = prev[:, n - 1] if n else prev[:, 0]
            shifted, same = v[:-1], v[1:]
            if n:
                block[:, n] = (c * up * shifted + s * keep * same) / math.sqrt(n)
            else:
                block[:, 0] = (-s * up * shifted + c * keep * same) / math.sqrt(total)
        blocks.append(block)
    for block in blocks:
        block.setflags(write=False)
    return tuple(blocks)


def beam_splitter_block(theta: float, total: int) -> np.ndarray:
    """get the beam splitter unitary on the ``total``-photon sector of a mode pair

    Entry ``[m, n]`` is ``<m, total-m| B(theta) |n, total-n>`` (first index:
    photons in mode ``i``).
    """
    if total < 0:
        raise FockError('photon number must be nonnegative, got %r' % total)
    return _beam_splitter_blocks(float(theta), int(total))[total]


def apply_beam_splitter(state: FockVector, spec: BeamSplitterSpec) -> FockVector:
    """apply ``B_ij(theta)`` to a state; sectors never mix, so leakage is unchanged"""
    _check_modes(state.num_modes, spec.mode_i, spec.mode_j)
    blocks = _beam_splitter_blocks(float(spec.theta), state.total_cutoff)
    amplitudes = state.amplitudes
    out = np.zeros_like(amplitudes)
    for total, rows in _pair_sectors(state.num_modes, state.total_cutoff,
                                     spec.mode_i, spec.mode_j):
        out[rows] = amplitudes[rows] @ blocks[total].T
    return FockVector(state.num_modes, state.total_cutoff, out, state.leakage,
                      dict(state.metadata))


### Photon counting ###

def number_distribution(state: FockVector, *groups: Sequence[int]) -> np.ndarray:
    """get the joint distribution of total photon numbers in each group of modes

    Groups must be disjoint; modes in no group are traced out.  The result
    has one axis of length ``total_cutoff + 1`` per group.
    """
    seen = set()
    for group in groups:
        _check_modes(state.num_modes, *group)
        if seen & set(group):
            raise FockError('mode groups overlap: %r' % (groups,))
        seen |= set(group)
    states = basis(state.num_modes, state.total_cutoff).states
    probabilities = np.abs(state.amplitudes)**2
    shape = (state.total_cutoff + 1,) * len(groups)
    counts = tuple(states[:, list(group)].sum(axis=1) for group in groups)
    out = np.zeros(shape)
    np.add.at(out, counts, probabilities)
    return out


def joint_number_distribution(state: FockVector, group_A: Sequence[int],
                              group_B: Sequence[int]):
    """get ``P(n_A, n_B)`` for two detectors that jointly count their mode groups"""
    from .objtypes import JointDistribution
    group_A, group_B = tuple(group_A), tuple(group_B)
    if set(group_A) & set(group_B):
        raise FockError('detector groups overlap: %r and %r' % (group_A, group_B))
    if set(group_A) | set(group_B) != set(range(state.num_modes)):
        raise FockError('detector groups %r and %r do not cover all %d modes'
                        % (group_A, group_B, state.num_modes))
    probabilities = number_distribution(state, group_A, group_B)
    return JointDistribution(probabilities, provenance='ideal', leakage=state.leakage,
                             metadata={'group_A': group_A, 'group_B': group_B})


# EOF
