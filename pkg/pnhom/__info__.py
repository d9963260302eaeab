#!/usr/bin/env python
#
# Copyright (c) 2025 The pnhom developers.
# License: 3-clause BSD.  The full license text is available at:
#  - https://github.com/pnhom/pnhom/blob/master/LICENSE
__doc__ = '''

----------------------------------------------------------------------------------
pnhom: photon-number correlations in Hong-Ou-Mandel interference of squeezed light
----------------------------------------------------------------------------------

About Pnhom
===========

````pnhom```` simulates the joint photon-number statistics of two-mode squeezed
vacuum interfering on a balanced beam splitter, with a tunable degree of
distinguishability set by the temporal delay between the two pulses.
States are evolved exactly in a truncated multimode Fock space, so the
transition from the perfectly correlated input (at large delay) to two
independent single-mode squeezers (at zero delay) is captured without any
Gaussian-state approximation.

The measured side of such an experiment is modeled as well: binomial loss
in each arm, time-multiplexed click detection with equal time bins, shot by
shot sampling of the click statistics, and exact deconvolution of click
statistics back to photon-number statistics.  Correlations between the two
outputs are quantified by the correlation coefficient, the Schmidt number of
the probability matrix, and the mutual information, optionally after
conditioning (truncating to few photons per arm, or removing the vacuum).

````pnhom```` is in active development, so any user feedback, bug reports,
comments, or suggestions are highly appreciated.  A list of issues is
located at https://github.com/pnhom/pnhom/issues.


Major Features
==============

````pnhom```` provides:

    - truncated Fock-space states, two-mode and single-mode squeezed vacuum
    - numerically stable beam splitters acting sector by sector
    - joint photon-number distributions of any two groups of modes
    - closed-form reference distributions for the limiting cases
    - binomial loss, time-multiplexed click response, and deconvolution
    - reproducible, worker-count independent Monte Carlo click sampling
    - correlation coefficient, Schmidt number, mutual information, g2(0)
    - delay scans with bootstrap uncertainties and a mean-photon-number band
    - click record ingestion, and table, structured, and session exports
    - a command line tool, ``pnhom``, with named preset scans


Current Release
===============

The latest development version is 0.1.0.dev0.


Installation
============

````pnhom```` can be installed with ````pip````::

    $ pip install .

````pnhom```` requires:

    - ``python`` (or ``pypy``), **>=3.9**
    - ``setuptools``, **>=42**
    - ``numpy``, **>=1.22**
    - ``scipy``, **>=1.12**
    - ``dill``, **>=0.3.8**


Basic Usage
===========

Simulate the joint distribution at one delay, apply the detection chain,
and evaluate the correlation measures:

::

    >>> import pnhom
    >>> squeeze = pnhom.squeeze_from_mean_photon(0.060, 0.20)
    >>> ideal = pnhom.simulate_hom(pnhom.HomConfig(squeeze, delay=10.0))
    >>> lossy = pnhom.apply_loss(ideal, 0.20, 0.14)
    >>> pnhom.measure_report(lossy)
    CorrelationReport(corr=..., schmidt_K=..., mutual_information=..., flags=())

Run a full delay scan at the experimental operating point and export
plot-ready tables:

::

    >>> result = pnhom.run_scan(pnhom.scan.preset('fig3'))
    >>> pnhom.export_results(result, 'fig3')
    ['fig3/measures.txt', 'fig3/distributions.txt']

or, from the command line:

::

    $ pnhom reproduce fig3 --out fig3
    $ pnhom sample --config scan.json --shots 1000000 --seed 7 --out run
    $ pnhom analyze clicks.txt --remove-vacuum --max-photons 2

To aid in debugging, ````pnhom.logger.trace(True)```` prints a tree of the
pipeline stages evaluated at each delay, with their timings.


More Information
================

Probably the best way to get started is to look at the documentation at
http://pnhom.rtfd.io.  Also see the test suite in ````pnhom.tests````, which
can be run with ````python -m pnhom.tests````.  File formats are described in
````docs/source/formats.rst````.


Citation
========

If you use ````pnhom```` to do research that leads to publication, we ask that
you acknowledge use of ````pnhom```` by citing the repository at
https://github.com/pnhom/pnhom.
'''

__version__ = '0.1.0.dev0'
__author__ = 'The pnhom developers'
__license__ = '''
Copyright (c) 2025 The pnhom developers.
All rights reserved.

Redistribution and use in source and binary forms, with or without
modification, are permitted provided that the following conditions
are met:

  - Redistributions of source code must retain the above copyright
    notice, this list of conditions and the following disclaimer.

  - Redistributions in binary form must reproduce the above copyright
    notice, this list of conditions and the following disclaimer in the
    documentation and/or other materials provided with the distribution.

  - Neither the names of the copyright holders nor the names of any of
    the contributors may be used to endorse or promote products derived
    from this software without specific prior written permission.

THIS SOFTWARE IS PROVIDED BY THE COPYRIGHT HOLDERS AND CONTRIBUTORS
"AS IS" AND ANY EXPRESS OR IMPLIED WARRANTIES, INCLUDING, BUT NOT LIMITED
TO, THE IMPLIED WARRANTIES OF MERCHANTABILITY AND FITNESS FOR A PARTICULAR
PURPOSE ARE DISCLAIMED. IN NO EVENT SHALL THE COPYRIGHT HOLDER OR
CONTRIBUTORS BE LIABLE FOR ANY DIRECT, INDIRECT, INCIDENTAL, SPECIAL,
EXEMPLARY, OR CONSEQUENTIAL DAMAGES (INCLUDING, BUT NOT LIMITED TO,
PROCUREMENT OF SUBSTITUTE GOODS OR SERVICES; LOSS OF USE, DATA, OR PROFITS;
OR BUSINESS INTERRUPTION) HOWEVER CAUSED AND ON ANY THEORY OF LIABILITY,
WHETHER IN CONTRACT, STRICT LIABILITY, OR TORT (INCLUDING NEGLIGENCE OR
OTHERWISE) ARISING IN ANY WAY OUT OF THE USE OF THIS SOFTWARE, EVEN IF
ADVISED OF THE POSSIBILITY OF SUCH DAMAGE.
'''

