"""Build script for the optional compiled kernel.

The package works without the extension (a pure-Python twin of the kernel
is selected at import time), so the Cython build is best-effort: if Cython
is unavailable the sdist installs pure.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "treecert._kernels._poly_cy",
                ["src/treecert/_kernels/_poly_cy.pyx"],
            )
        ],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
