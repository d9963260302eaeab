# -*- coding: utf-8 -*-
#
# pnhom documentation build configuration file
#
# This file is execfile()d with the current directory set to its
# containing dir.

import os
from datetime import datetime
import sys
sys.path.insert(0, os.path.abspath('../..'))
scripts = os.path.abspath('../../scripts')
sys.path.insert(0, scripts)
try:
    os.symlink(scripts+os.sep+'pnhom', scripts+os.sep+'_pnhom.py')
except:
    pass

# Import the project
import pnhom

# -- General configuration ------------------------------------------------

extensions = ['sphinx.ext.autodoc',
    'sphinx.ext.intersphinx',
    'sphinx.ext.imgmath',
    'sphinx.ext.napoleon']

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

# General information about the project.
project = 'pnhom'
year = datetime.now().year
copyright = '%d, The pnhom developers' % year
author = 'The pnhom developers'

# extension config
github_project_url = "https://github.com/pnhom/pnhom"
autoclass_content = 'both'
autodoc_default_options = {
    'members': True,
    'undoc-members': True,
    'show-inheritance': True,
    'exclude-members': ( #NOTE: this is a single string concatenation
        '__dict__,'
        '__weakref__,'
        '__module__,'
        '__init__,' # redundant with class docstring by "autoclass_content=both"
        '__annotations__,'
        '__dataclass_fields__,'
    )
}
autodoc_typehints = 'description'
autodoc_typehints_format = 'short'
napoleon_use_param = True

# The short X.Y version.
version = pnhom.__version__
# The full version, including alpha/beta/rc tags.
release = version

language = 'en'
exclude_patterns = []
pygments_style = 'sphinx'

# Configure how the modules, functions, etc names look
add_module_names = False
modindex_common_prefix = ['pnhom.']


# -- Options for HTML output ----------------------------------------------

# on_rtd is whether we are on readthedocs.io
on_rtd = os.environ.get('READTHEDOCS', None) == 'True'

if not on_rtd:
    html_theme = 'alabaster'
else:
    html_theme = 'sphinx_rtd_theme'

html_theme_options = {
    'github_user': 'pnhom',
    'github_repo': 'pnhom',
    'github_button': False,
    'github_banner': True,
    'extra_nav_links': {'Module Index': 'py-modindex.html'},
    'globaltoc_maxdepth': 4,
    'show_powered_by': False
}

if on_rtd:
    toc_style = 'localtoc.html', # display the toctree
else:
    toc_style = 'globaltoc.html', # collapse the toctree
html_sidebars = {
    '**': [
        'about.html',
        'searchbox.html',
        toc_style, # defined above
        'relations.html',
    ]
}

htmlhelp_basename = 'pnhomdoc'


# -- Options for manual page output ---------------------------------------

man_pages = [
    (master_doc, 'pnhom', 'pnhom Documentation',
     [author], 1)
]


intersphinx_mapping = {
    'python': ('https://docs.python.org/3', None),
    'numpy': ('https://numpy.org/doc/stable/', None),
    'scipy': ('https://docs.scipy.org/doc/scipy/', None),
}
