#!/usr/bin/env python
#
# Copyright (c) 2025 The pnhom developers.
# License: 3-clause BSD.  The full license text is available at:
#  - https://github.com/pnhom/pnhom/blob/master/LICENSE

import math

import numpy as np

from pnhom import (SqueezeParams, PulseModel, HomConfig, overlap_from_delay,
                   theta_dis_from_overlap, hom_distribution, simulate_hom,
                   tmsvs_reference_distribution, smsvs_product_distribution,
                   split_tmsvs_distribution, squeeze_from_mean_photon, delay_grid,
                   two_mode_squeezed_vacuum, joint_number_distribution, apply_loss,
                   marginals, g2_zero, effective_mode_number, settings,
                   FockError, TruncationError)


def _relaxed(function, *args):
    # r = 1.0 at total cutoff 32 leaks ~1e-4; both sides truncate identically
    saved = settings['max_leakage']
    settings['max_leakage'] = 1e-3
    try:
        return function(*args)
    finally:
        settings['max_leakage'] = saved


def _total_photons(dist):
    n = np.add.outer(np.arange(dist.max_n_A + 1), np.arange(dist.max_n_B + 1))
    return np.bincount(n.ravel(), weights=dist.probabilities.ravel())


def test_overlap():
    pulse = PulseModel(3.0)
    assert overlap_from_delay(0.0, pulse) == 1.0
    assert abs(overlap_from_delay(3.0, pulse) - 0.5) < 1e-15
    assert overlap_from_delay(-2.0, pulse) == overlap_from_delay(2.0, pulse)
    assert overlap_from_delay(30.0, pulse) < 1e-29
    assert PulseModel().duration_fwhm == settings['pulse_fwhm']


def test_theta_dis():
    assert theta_dis_from_overlap(1.0) == 0.0
    assert abs(theta_dis_from_overlap(0.0) - math.pi / 2) < 1e-15
    assert abs(math.cos(theta_dis_from_overlap(0.3)) - 0.3) < 1e-15
    for bad in (-0.1, 1.5):
        try:
            theta_dis_from_overlap(bad)
            assert False
        except FockError:
            pass


def test_perfect_overlap_is_product_of_squeezers():
    for r in (0.1, 0.5, 1.0):
        squeeze = SqueezeParams(r)
        dist = _relaxed(hom_distribution, squeeze, 0.0, 32)
        oracle = smsvs_product_distribution(squeeze, 32, total=True)
        assert np.abs(dist.probabilities - oracle.probabilities).max() < 1e-10


def test_distinguishable_is_split_tmsv():
    for r in (0.1, 0.5, 1.0):
        squeeze = SqueezeParams(r)
        dist = _relaxed(hom_distribution, squeeze, math.pi / 2, 32)
        oracle = split_tmsvs_distribution(squeeze, 32)
        assert np.abs(dist.probabilities - oracle.probabilities).max() < 1e-10


def test_tmsv_reference():
    squeeze = SqueezeParams(0.5)
    state = two_mode_squeezed_vacuum(squeeze, 0, 1, 2, 32)
    dist = joint_number_distribution(state, (0,), (1,))
    reference = tmsvs_reference_distribution(squeeze, 16)
    assert np.abs(dist.probabilities[:17, :17] - reference.probabilities).max() < 1e-15
    assert dist.probabilities[17:].sum() == 0
    assert abs(reference.total + reference.leakage - 1) < 1e-14


def test_simulate_hom_metadata():
    squeeze = squeeze_from_mean_photon(0.060, 0.20)
    dist = simulate_hom(HomConfig(squeeze, delay=3.0))
    assert dist.metadata['delay'] == 3.0
    assert abs(dist.metadata['overlap'] - 0.5) < 1e-15
    assert dist.metadata['total_cutoff'] == settings['total_cutoff']
    assert dist.leakage < 1e-10
    assert abs(dist.total - 1) < 1e-10
    # beam splitters conserve the total photon number
    far = simulate_hom(HomConfig(squeeze, delay=10.0))
    assert np.abs(_total_photons(dist) - _total_photons(far)).max() < 1e-12


def test_hom_dip():
    squeeze = SqueezeParams(0.3)
    near = simulate_hom(HomConfig(squeeze, delay=0.0))
    far = simulate_hom(HomConfig(squeeze, delay=10.0))
    assert near[1, 1] < 1e-12
    assert far[1, 1] > 1e-3
    assert near[2, 0] > far[2, 0]
    assert abs(near[2, 0] - near[0, 2]) < 1e-14


def test_truncation_guard():
    try:
        simulate_hom(HomConfig(SqueezeParams(1.0), total_cutoff=8))
        assert False
    except TruncationError as error:
        assert 'at least' in str(error)
    for cutoff in (2, 9):
        try:
            HomConfig(SqueezeParams(0.1), total_cutoff=cutoff)
            assert False
        except FockError:
            pass


def test_operating_point():
    squeeze = squeeze_from_mean_photon(0.060, 0.20)
    assert abs(squeeze.r - 0.5235) < 1e-4
    assert abs(math.sinh(squeeze.r)**2 * 0.20 - 0.060) < 1e-12
    lossy = apply_loss(tmsvs_reference_distribution(squeeze, 16), 0.20, 0.14)
    for n, stated in ((1, 6e-3), (2, 9e-5), (3, 1e-6)):
        assert 0.5 < lossy[n, n] / stated < 2.0
    try:
        squeeze_from_mean_photon(0.06, 0.0)
        assert False
    except FockError:
        pass


def test_mode_number():
    assert abs(effective_mode_number(1.75) - 4 / 3) < 1e-3
    reference = tmsvs_reference_distribution(squeeze_from_mean_photon(0.060, 0.20), 40)
    for eta in (1.0, 0.2, 0.14):
        lossy = apply_loss(reference, eta, eta)
        marginal_A, marginal_B = marginals(lossy)
        assert abs(g2_zero(marginal_A) - 2.0) < 1e-6
        assert abs(g2_zero(marginal_B) - 2.0) < 1e-6


def test_delay_grid():
    grid = delay_grid()
    assert len(grid) == 41
    assert grid[0] == -10.0 and grid[-1] == 10.0 and grid[20] == 0.0
    assert list(delay_grid(1.0, 3)) == [-1.0, 0.0, 1.0]


if __name__ == '__main__':
    test_overlap()
    test_theta_dis()
    test_perfect_overlap_is_product_of_squeezers()
    test_distinguishable_is_split_tmsv()
    test_tmsv_reference()
    test_simulate_hom_metadata()
    test_hom_dip()
    test_truncation_guard()
    test_operating_point()
    test_mode_number()
    test_delay_grid()
