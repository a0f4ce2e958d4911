"""Builds the compiled row-reduction kernel when Cython is available.

The package works without it: linalg falls back to the pure-Python
twin, so a failed extension build only costs speed.
"""

import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "gglab._fastrref",
                ["src/gglab/_fastrref.pyx"],
                include_dirs=[numpy.get_include()],
            )
        ],
        language_level=3,
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
