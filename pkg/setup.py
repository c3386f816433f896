"""Build script for the optional compiled kernel.

The package works without the extension: millionaire.kernels falls back to
the pure-Python implementation when millionaire._kernels is missing.  Set
MILLIONAIRE_SKIP_EXT=1 to force a pure build.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("MILLIONAIRE_SKIP_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "millionaire._kernels",
                    ["src/millionaire/_kernels.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
            },
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
