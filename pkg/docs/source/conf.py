# Configuration file for the Sphinx documentation builder.
#
# Run ./build_docs.sh from the repository root.

import os
import sys

sys.path.insert(0, os.path.abspath('../..'))

from netkeycast.__version__ import __version__  # noqa: E402

# -- Project information -----------------------------------------------------

project = 'netkeycast'
copyright = '2026, netkeycast developers'
author = 'netkeycast developers'

version = __version__
release = __version__

# -- General configuration ---------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.todo',
    'sphinx.ext.coverage',
    'sphinx.ext.mathjax',
    'sphinx.ext.viewcode',
]

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'
language = 'en'
exclude_patterns = []
pygments_style = None

# -- Options for HTML output -------------------------------------------------

html_theme = 'alabaster'
html_static_path = []
htmlhelp_basename = 'netkeycastdoc'

# -- Options for manual page output ------------------------------------------

man_pages = [
    (master_doc, 'netkeycast', 'netkeycast Documentation', [author], 1)
]

todo_include_todos = True


def skip(app, what, name, obj, skip, options):
    if name == "__init__":
        return False
    return skip


def setup(app):
    app.connect("autodoc-skip-member", skip)
