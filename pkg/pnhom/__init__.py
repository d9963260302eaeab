#!/usr/bin/env python
#
# Copyright (c) 2025 The pnhom developers.
# License: 3-clause BSD.  The full license text is available at:
#  - https://github.com/pnhom/pnhom/blob/master/LICENSE

# author, version, license, and long description
try: # the package is installed
    from .__info__ import __version__, __author__, __doc__, __license__
except: # pragma: no cover
    import os
    import sys
    parent = os.path.dirname(os.path.abspath(os.path.dirname(__file__)))
    sys.path.append(parent)
    # get distribution meta info
    from version import (__version__, __author__,
                         get_license_text, get_readme_as_rst)
    __license__ = get_license_text(os.path.join(parent, 'LICENSE'))
    __license__ = "\n%s" % __license__
    __doc__ = get_readme_as_rst(os.path.join(parent, 'README.md'))
    del os, sys, parent, get_license_text, get_readme_as_rst


from ._fock import (
    FockVector, SqueezeParams, BeamSplitterSpec, basis, vacuum, fock_state,
    two_mode_squeezed_vacuum, single_mode_squeezed_vacuum, apply_beam_splitter,
    beam_splitter_block, number_distribution, joint_number_distribution,
    required_cutoff,
    PnhomError, PnhomWarning, FockError, TruncationError, TruncationWarning,
)
from .objtypes import JointDistribution, ClickHistogram, DetectionChain, DistributionError
from .interference import (
    PulseModel, HomConfig, overlap_from_delay, theta_dis_from_overlap, hom_distribution,
    simulate_hom, tmsvs_reference_distribution, smsvs_product_distribution,
    split_tmsvs_distribution, squeeze_from_mean_photon, delay_grid,
)
from .detect import (
    apply_loss, loss_matrix, loss_budget, tmd_convolution_matrix, clicks_from_photons,
    deconvolve_clicks, sample_clicks, mean_clicks, unresolved_mass,
    LAB_STAGES, LAB_TOTALS, LAB_CHAIN, DetectionError,
)
from .measures import (
    CorrelationReport, ConditioningSpec, marginals, correlation_coefficient,
    schmidt_number, mutual_information, g2_zero, effective_mode_number,
    condition_distribution, measure_report, mean_photon, marginal_entropy, MeasureError,
)
from .scan import (
    ScanConfig, ScanRecord, ScanResult, Interval, run_scan, bootstrap_uncertainty,
    preset, ScanError, ConfigError,
)
from .records import (
    ingest_click_records, export_click_records, read_distribution, write_distribution,
    export_results, load_results, load_config, validate_scan_document, RecordError,
)
from . import detect, interference, logger, measures, records, scan

# get global settings
from .settings import settings

# make sure "trace" is turned off
logger.trace(False)


def license():
    """print license"""
    print (__license__)
    return

def citation():
    """print citation"""
    print (__doc__[__doc__.find('Citation'):])
    return

# end of file
