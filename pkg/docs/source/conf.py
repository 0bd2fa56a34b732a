# Configuration file for the Sphinx documentation builder of weedmap.
import os
import sys

sys.path.insert(0, os.path.abspath('../../'))

project = 'weedmap'
copyright = '2026, Weedmap developers'
author = 'Weedmap developers'
version = '1.0'
release = '1.0.0'

extensions = ['sphinx.ext.autodoc']
autodoc_member_order = 'bysource'

master_doc = 'index'
exclude_patterns = []
pygments_style = 'sphinx'

html_theme = 'sphinx_rtd_theme'
htmlhelp_basename = 'weedmapdoc'
