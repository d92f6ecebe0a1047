"""Build script: compiles the optional scalar-arithmetic extension.

The package runs without the extension (a pure-Python twin is selected at
import time), so a failed or skipped build only costs speed. Set
OAGKIT_SKIP_EXT=1 to force a pure-Python install.
"""

import os

from setuptools import setup

ext_modules = []
if not os.environ.get("OAGKIT_SKIP_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/oagkit/_scalar_c.pyx"],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
