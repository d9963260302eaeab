#!/usr/bin/env python
#
# Copyright (c) 2025 The pnhom developers.
# License: 3-clause BSD.  The full license text is available at:
#  - https://github.com/pnhom/pnhom/blob/master/LICENSE
"""
to run this test suite, first build and install `pnhom`.

  $ python -m pip install ../..


then run the tests with:

  $ python -m pnhom.tests


or, if `pytest` is installed:

  $ pytest pnhom/tests

"""
