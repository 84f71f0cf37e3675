"""Build script for the optional compiled split-search kernel.

The package is fully functional without the extension (a numpy fallback is
selected at import time); building it makes forest training several times
faster. Set BOTDETECT_SKIP_EXT=1 to skip compilation entirely.
"""

import os

from setuptools import setup

ext_modules = []
if not os.environ.get("BOTDETECT_SKIP_EXT"):
    try:
        import numpy
        from Cython.Build import cythonize
        from setuptools.extension import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "botdetect.forest._splitter",
                    ["src/botdetect/forest/_splitter.pyx"],
                    language="c++",
                    include_dirs=[numpy.get_include()],
                )
            ],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
