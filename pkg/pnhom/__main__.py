#!/usr/bin/env python
#
# Copyright (c) 2025 The pnhom developers.
# License: 3-clause BSD.  The full license text is available at:
#  - https://github.com/pnhom/pnhom/blob/master/LICENSE

import sys

from pnhom._cli import main

sys.exit(main())
