#!/usr/bin/env python
#
# Copyright (c) 2025 The pnhom developers.
# License: 3-clause BSD.  The full license text is available at:
#  - https://github.com/pnhom/pnhom/blob/master/LICENSE

import math

import numpy as np
from scipy.stats import poisson

from pnhom import (SqueezeParams, JointDistribution, ConditioningSpec,
                   tmsvs_reference_distribution, smsvs_product_distribution,
                   hom_distribution, apply_loss, marginals, mean_photon,
                   correlation_coefficient, schmidt_number, mutual_information,
                   marginal_entropy, g2_zero, effective_mode_number,
                   condition_distribution, measure_report, MeasureError)


def _dist(cells, shape=(3, 3)):
    p = np.zeros(shape)
    for index, value in cells.items():
        p[index] = value
    return JointDistribution(p)


def test_perfect_correlations():
    same = _dist({(0, 0): 0.5, (1, 1): 0.5})
    assert abs(correlation_coefficient(same) - 1) < 1e-15
    assert abs(mutual_information(same) - math.log10(2)) < 1e-15
    assert abs(schmidt_number(same) - 2) < 1e-12
    opposite = _dist({(0, 1): 0.5, (1, 0): 0.5})
    assert abs(correlation_coefficient(opposite) + 1) < 1e-15
    assert abs(mutual_information(opposite) - math.log10(2)) < 1e-15


def test_tmsv_measures():
    r = 0.5
    dist = tmsvs_reference_distribution(SqueezeParams(r), 40)
    t2 = math.tanh(r)**2
    marginal_A, marginal_B = marginals(dist)
    assert np.abs(marginal_A - marginal_B).max() < 1e-15
    assert abs(mean_photon(marginal_A) - math.sinh(r)**2) < 1e-12
    mi = mutual_information(dist)
    assert abs(mi - marginal_entropy(marginal_A)) < 1e-12
    assert abs(mi - 0.2864) < 1e-3
    assert abs(schmidt_number(dist) - (1 + t2) / (1 - t2)) < 1e-9
    assert abs(correlation_coefficient(dist) - 1) < 1e-12
    # singular values of the amplitude matrix are tanh(r)**n
    assert abs(schmidt_number(dist, 'amplitude') - math.exp(2 * r)) < 1e-9
    try:
        schmidt_number(dist, 'density')
        assert False
    except MeasureError:
        pass


def test_independent_distributions():
    product = smsvs_product_distribution(SqueezeParams(0.5), 32)
    for dist in (product, apply_loss(product, 0.2, 0.14)):
        report = measure_report(dist)
        assert abs(report.corr) < 1e-12
        assert report.mutual_information < 1e-12
        assert abs(report.schmidt_K - 1) < 1e-9
        assert report.flags == ()


def test_per_mode_truncation_keeps_products():
    # a total-photon cutoff removes a corner of the product and correlates it
    clipped = smsvs_product_distribution(SqueezeParams(1.0), 8, total=True)
    assert mutual_information(clipped) > 1e-6
    window = ConditioningSpec(max_photons_per_mode=2)
    for dist in (clipped, smsvs_product_distribution(SqueezeParams(1.0), 8)):
        assert mutual_information(condition_distribution(dist, window)) < 1e-12


def test_measure_bounds():
    rng = np.random.default_rng(17)
    for shape in ((4, 4), (3, 7), (9, 9)):
        for _ in range(20):
            p = rng.random(shape)**4
            dist = JointDistribution(p / p.sum())
            report = measure_report(dist)
            assert -1 <= report.corr <= 1
            assert 1 - 1e-12 <= report.schmidt_K <= min(shape) + 1e-9
            marginal_A, marginal_B = marginals(dist)
            bound = min(marginal_entropy(marginal_A), marginal_entropy(marginal_B))
            assert 0 <= report.mutual_information <= bound + 1e-12


def test_truncated_input_is_normalized():
    dist = tmsvs_reference_distribution(SqueezeParams(1.0), 6)
    assert dist.leakage > 1e-3
    cropped = JointDistribution(dist.normalized())
    assert abs(mutual_information(dist) - mutual_information(cropped)) < 1e-14
    assert abs(schmidt_number(dist) - schmidt_number(cropped)) < 1e-12


def test_g2():
    thermal = marginals(tmsvs_reference_distribution(SqueezeParams(0.7), 60))[0]
    assert abs(g2_zero(thermal) - 2) < 1e-9
    coherent = poisson.pmf(np.arange(60), 1.0)
    assert abs(g2_zero(coherent) - 1) < 1e-9
    assert abs(g2_zero([0, 0, 1]) - 0.5) < 1e-15
    try:
        g2_zero([1, 0, 0])
        assert False
    except MeasureError:
        pass


def test_effective_mode_number():
    assert effective_mode_number(2.0) == 1.0
    assert abs(effective_mode_number(1.5) - 2) < 1e-12
    assert effective_mode_number(2.0 + 1e-12) == 1.0
    for g2 in (1.0, 0.5, 2.5):
        try:
            effective_mode_number(g2)
            assert False
        except MeasureError:
            pass


def test_conditioning_spec():
    assert ConditioningSpec().label == 'full'
    assert ConditioningSpec(True).label == 'novac'
    assert ConditioningSpec(max_photons_per_mode=2).label == 'le2'
    assert ConditioningSpec(True, 2).label == 'le2-novac'
    try:
        ConditioningSpec(max_photons_per_mode=0)
        assert False
    except MeasureError:
        pass


def test_conditioning():
    dist = tmsvs_reference_distribution(SqueezeParams(0.5), 16)
    assert condition_distribution(dist, ConditioningSpec()) is dist
    both = condition_distribution(dist, ConditioningSpec(True, 2))
    assert both.probabilities.shape == (3, 3)
    assert both[0, 0] == 0 and abs(both.total - 1) < 1e-15
    assert both.leakage == 0 and both.provenance == 'reference|le2-novac'
    assert both.metadata['conditioning'] == 'le2-novac'
    first = condition_distribution(condition_distribution(dist, ConditioningSpec(True)),
                                   ConditioningSpec(max_photons_per_mode=2))
    second = condition_distribution(condition_distribution(dist, ConditioningSpec(False, 2)),
                                    ConditioningSpec(True))
    for other in (first, second):
        assert np.abs(other.probabilities - both.probabilities).max() < 1e-15
    try:
        condition_distribution(_dist({(0, 0): 1.0}), ConditioningSpec(True))
        assert False
    except MeasureError:
        pass


def test_vacuum_removal_makes_correlation():
    product = smsvs_product_distribution(SqueezeParams(0.5), 32)
    assert mutual_information(product) < 1e-12
    assert mutual_information(condition_distribution(product, ConditioningSpec(True))) > 1e-3
    # at perfect overlap only (2, 0), (0, 2) and (2, 2) survive the window
    ideal = hom_distribution(SqueezeParams(0.1), 0.0, 8)
    windowed = condition_distribution(ideal, ConditioningSpec(True, 2))
    assert correlation_coefficient(windowed) < -0.98


def test_degenerate_marginal():
    dist = _dist({(1, 0): 0.4, (1, 2): 0.6})
    report = measure_report(dist)
    assert report.corr == 0.0
    assert report.flags == ('degenerate_A',)
    assert report.mutual_information < 1e-15
    assert report.as_dict()['flags'] == ['degenerate_A']


if __name__ == '__main__':
    test_perfect_correlations()
    test_tmsv_measures()
    test_independent_distributions()
    test_per_mode_truncation_keeps_products()
    test_measure_bounds()
    test_truncated_input_is_normalized()
    test_g2()
    test_effective_mode_number()
    test_conditioning_spec()
    test_conditioning()
    test_vacuum_removal_makes_correlation()
    test_degenerate_marginal()
