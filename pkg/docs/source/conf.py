import os
import sys

sys.path.insert(0, os.path.abspath("../../qdiscrim"))

project = "QDiscrim.Trine"
copyright = "2025, QDiscrim developers"
author = "QDiscrim developers"
release = "0.0.1"

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.napoleon",
    "sphinx.ext.viewcode",
    "myst_parser",
]

source_suffix = {
    ".rst": "restructuredtext",
    ".md": "markdown",
}

html_theme = "sphinx_rtd_theme"
