#!/usr/bin/env python
#
# Copyright (c) 2025 The pnhom developers.
# License: 3-clause BSD.  The full license text is available at:
#  - https://github.com/pnhom/pnhom/blob/master/LICENSE
"""
global settings for simulation, detection and scans
"""

settings = {
    'total_cutoff' : 32, # max total photon number of simulated states
    'max_leakage' : 1e-6,
    'bins' : 8, # time bins per TMD
    'chunk_shots' : 65536,
    'resamples' : 100,
    'percentiles' : (16, 84),
    'schmidt_matrix' : 'intensity', # or 'amplitude'
    'workers' : 1,
    'pulse_fwhm' : 3.0, # ps
    'delay_points' : 41,
    'delay_span' : 10.0, # ps
}

