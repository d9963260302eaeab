#!/usr/bin/env python
#
# Copyright (c) 2025 The pnhom developers.
# License: 3-clause BSD.  The full license text is available at:
#  - https://github.com/pnhom/pnhom/blob/master/LICENSE
"""
value types shared by the simulation, detection and analysis modules
"""

__all__ = ['JointDistribution', 'ClickHistogram', 'DetectionChain']

from dataclasses import dataclass, field, replace

import numpy as np

from ._fock import PnhomError

KINDS = ('photons', 'clicks')


class DistributionError(PnhomError, ValueError):
    pass


@dataclass(frozen=True, eq=False)
class JointDistribution:
    """joint probabilities ``P(n_A, n_B)`` of photon numbers (or clicks) in two arms

    ``probabilities[n_A, n_B]`` is nonnegative and sums to one within 1e-9,
    or within the declared truncation ``leakage``.  ``provenance`` records
    how the distribution was made (ideal, lossy, clicks, deconvolved, ...).
    """
    probabilities: np.ndarray
    kind: str = 'photons'
    provenance: str = 'ideal'
    leakage: float = 0.0
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        p = np.array(self.probabilities, dtype=float)
        if p.ndim != 2 or 0 in p.shape:
            raise DistributionError('joint distribution must be a nonempty matrix, got shape %r' % (p.shape,))
        if not np.all(np.isfinite(p)) or np.any(p < 0):
            raise DistributionError('joint distribution has negative or non-finite entries')
        if self.kind not in KINDS:
            raise DistributionError('unknown distribution kind %r' % self.kind)
        if abs(p.sum() - 1.0) > 1e-9 + self.leakage:
            raise DistributionError('joint distribution sums to %.12g (leakage %.3g)'
                                    % (p.sum(), self.leakage))
        p.setflags(write=False)
        object.__setattr__(self, 'probabilities', p)

    @property
    def max_n_A(self) -> int:
        return self.probabilities.shape[0] - 1

    @property
    def max_n_B(self) -> int:
        return self.probabilities.shape[1] - 1

    @property
    def total(self) -> float:
        return float(self.probabilities.sum())

    def __getitem__(self, index):
        """get ``P(n_A, n_B)``; zero outside the stored range"""
        n_A, n_B = index
        if 0 <= n_A <= self.max_n_A and 0 <= n_B <= self.max_n_B:
            return float(self.probabilities[n_A, n_B])
        return 0.0

    def normalized(self) -> np.ndarray:
        return self.probabilities / self.probabilities.sum()

    def derive(self, probabilities, provenance, **changes) -> 'JointDistribution':
        """make a new distribution carrying this one's metadata forward"""
        metadata = dict(self.metadata)
        metadata.update(changes.pop('metadata', {}))
        return replace(self, probabilities=probabilities, provenance=provenance,
                       metadata=metadata, **changes)


@dataclass(frozen=True)
class DetectionChain:
    """per-arm total transmission and time-multiplexed detector bin count"""
    eta_A: float
    eta_B: float
    bins_A: int = 8
    bins_B: int = 8

    def __post_init__(self):
        for name in ('eta_A', 'eta_B'):
            eta = getattr(self, name)
            if not (0.0 < eta <= 1.0):
                raise DistributionError('%s must lie in (0, 1], got %r' % (name, eta))
        for name in ('bins_A', 'bins_B'):
            if int(getattr(self, name)) < 1:
                raise DistributionError('%s must be >= 1, got %r' % (name, getattr(self, name)))


@dataclass(frozen=True, eq=False)
class ClickHistogram:
    """shot counts of joint click outcomes ``(k_A, k_B)``, ``k <= bins``"""
    bins_A: int
    bins_B: int
    counts: np.ndarray
    total_shots: int

    def __post_init__(self):
        counts = np.array(self.counts, dtype=np.int64)
        if counts.shape != (self.bins_A + 1, self.bins_B + 1):
            raise DistributionError('counts have shape %r, expected %r'
                                    % (counts.shape, (self.bins_A + 1, self.bins_B + 1)))
        if np.any(counts < 0):
            raise DistributionError('click counts must be nonnegative')
        if int(counts.sum()) != self.total_shots:
            raise DistributionError('counts sum to %d, not total_shots=%d'
                                    % (counts.sum(), self.total_shots))
        counts.setflags(write=False)
        object.__setattr__(self, 'counts', counts)

    def __eq__(self, other):
        if not isinstance(other, ClickHistogram):
            return NotImplemented
        return (self.bins_A, self.bins_B, self.total_shots) == \
               (other.bins_A, other.bins_B, other.total_shots) \
               and np.array_equal(self.counts, other.counts)

    __hash__ = None

    def frequencies(self) -> JointDistribution:
        """get the empirical click distribution"""
        if self.total_shots <= 0:
            raise DistributionError('empty click histogram')
        return JointDistribution(self.counts / self.total_shots, kind='clicks',
                                 provenance='sampled',
                                 metadata={'total_shots': self.total_shots})


# EOF
