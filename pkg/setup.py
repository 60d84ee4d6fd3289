"""Build script for the optional compiled assignment kernel.

Set PADOT_PURE=1 to skip the extension entirely; the package falls back to the
pure-Python kernel at import time.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("PADOT_PURE") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("padot._hungarian", ["src/padot/_hungarian.pyx"])],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
