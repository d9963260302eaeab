#!/usr/bin/env python
#
# Copyright (c) 2025 The pnhom developers.
# License: 3-clause BSD.  The full license text is available at:
#  - https://github.com/pnhom/pnhom/blob/master/LICENSE

import os
import sys
# drop support for older python
if sys.version_info < (3, 9):
    unsupported = 'Versions of Python before 3.9 are not supported'
    raise ValueError(unsupported)

# get distribution meta info
here = os.path.abspath(os.path.dirname(__file__))
sys.path.append(here)
from version import (__version__, __author__, __contact__ as AUTHOR_EMAIL,
                     get_license_text, get_readme_as_rst, write_info_file)
LICENSE = get_license_text(os.path.join(here, 'LICENSE'))
README = get_readme_as_rst(os.path.join(here, 'README.md'))

# write meta info file
write_info_file(here, 'pnhom', doc=README, license=LICENSE,
                version=__version__, author=__author__)
del here, get_license_text, get_readme_as_rst, write_info_file

from setuptools import setup

# define dependencies
numpy_version = 'numpy>=1.22'
scipy_version = 'scipy>=1.12' # exact Stirling numbers
dill_version = 'dill>=0.3.8'
depend = [numpy_version, scipy_version, dill_version]

setup(
    name='pnhom',
    version=__version__,
    description='photon-number correlations in Hong-Ou-Mandel interference of squeezed light',
    long_description = README.strip(),
    author = __author__,
    author_email = AUTHOR_EMAIL,
    maintainer = __author__,
    maintainer_email = AUTHOR_EMAIL,
    license = 'BSD-3-Clause',
    platforms = ['Linux', 'Windows', 'Mac'],
    url = 'https://github.com/pnhom/pnhom',
    project_urls = {
        'Documentation':'http://pnhom.rtfd.io',
        'Source Code':'https://github.com/pnhom/pnhom',
        'Bug Tracker':'https://github.com/pnhom/pnhom/issues',
    },
    python_requires = '>=3.9',
    classifiers = [
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: BSD License',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
        'Programming Language :: Python :: 3.12',
        'Programming Language :: Python :: 3.13',
        'Programming Language :: Python :: Implementation :: CPython',
        'Topic :: Scientific/Engineering :: Physics',
    ],
    packages = ['pnhom','pnhom.tests'],
    package_dir = {'pnhom':'pnhom', 'pnhom.tests':'pnhom/tests'},
    scripts=['scripts/pnhom'],
    zip_safe=False,
    install_requires=depend,
)
