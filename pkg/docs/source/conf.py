# -*- coding: utf-8 -*-
#
# Configuration file for the Sphinx documentation builder.
#
# This file does only contain a selection of the most common options. For a
# full list see the documentation:
# http://www.sphinx-doc.org/en/master/config

# -- Path setup --------------------------------------------------------------

import os
import sys

import sphinx_bootstrap_theme

sys.path.insert(0, os.path.abspath(os.path.join('..', '..')))

import skmalleable


# -- Project information -----------------------------------------------------

project = 'scikit-malleable'
copyright = '2024, scikit-malleable developers'
author = 'scikit-malleable developers'

# The short X.Y version
version = skmalleable.__version__


# -- General configuration ---------------------------------------------------

extensions = [
    'matplotlib.sphinxext.plot_directive',
    'numpydoc',
    'sphinx.ext.autodoc',
    'sphinx.ext.autosummary',
    'sphinx.ext.doctest',
    'sphinx.ext.intersphinx',
    'sphinx.ext.mathjax',
    'sphinx.ext.viewcode',
]

intersphinx_mapping = {
    'numpy': ('https://numpy.org/doc/stable/', None),
    'matplotlib': ('https://matplotlib.org/stable/', None),
    'pandas': ('https://pandas.pydata.org/docs/', None),
}

autosummary_generate = True

# Prevent warnings about nonexisting documents
numpydoc_show_class_members = False

templates_path = ['_templates']

source_suffix = '.rst'

# The master toctree document.
master_doc = 'index'

language = 'en'

exclude_patterns = []

pygments_style = None


# -- Options for HTML output -------------------------------------------------

html_theme = 'bootstrap'
html_theme_path = sphinx_bootstrap_theme.get_html_theme_path()

html_theme_options = {
    'bootswatch_theme': 'cosmo',
    'globaltoc_depth': -1,
    'navbar_links': [
        ('Guide', 'guide/toc'),
        ('Plotting', 'plotting'),
        ('API', 'api_reference/toc'),
    ],
    'navbar_pagenav': False,
    'navbar_sidebarrel': False,
    'source_link_position': None,
}

html_static_path = []


# -- Options for HTMLHelp output ---------------------------------------------

htmlhelp_basename = 'scikit-malleabledoc'


# -- Options for manual page output ------------------------------------------

man_pages = [
    (master_doc, 'scikit-malleable', 'scikit-malleable Documentation',
     [author], 1)
]


# -- Options for Epub output -------------------------------------------------

epub_title = project

epub_exclude_files = ['search.html']
