# -*- coding: utf-8 -*-

# If extensions (or modules to document with autodoc) are in another directory,
# add these directories to sys.path here. If the directory is relative to the
# documentation root, use os.path.abspath to make it absolute, like shown here.
#
import os
import sys

import django

#
# Configuration file for the Sphinx documentation builder.
#
# http://www.sphinx-doc.org/en/master/config

sys.path.insert(0, os.path.abspath('../src'))

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'qdvol.conf.dev')

django.setup()


import qdvol  # noqa isort:skip


# -- Project information -----------------------------------------------------

project = 'qdvol'
author = qdvol.__author__

# The short X.Y version
version = '.'.join(map(str, qdvol.VERSION[0:2]))
# The full version, including alpha/beta/rc tags
release = qdvol.__version__


# -- General configuration ---------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.intersphinx',
    'sphinx.ext.coverage'
]

templates_path = ['_templates']

source_suffix = '.rst'

# The master toctree document.
master_doc = 'index'

exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store']

# The name of the Pygments (syntax highlighting) style to use.
pygments_style = 'sphinx'


# -- Options for HTML output -------------------------------------------------

html_theme = 'sphinx_rtd_theme'

html_sidebars = {
    '**': [
        'navigation.html',
        'relations.html',  # needs 'show_related': True theme option to display
        'searchbox.html',
    ]
}

# Output file base name for HTML help builder.
htmlhelp_basename = 'qdvoldoc'


# -- Options for manual page output ------------------------------------------

# One entry per manual page. List of tuples
# (source start file, name, description, authors, manual section).
man_pages = [
    (master_doc, 'qdvol', 'qdvol Documentation',
     [author], 1)
]


# -- Extension configuration -------------------------------------------------

intersphinx_mapping = {'python': ('https://docs.python.org/3', None)}
