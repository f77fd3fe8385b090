"""Build script.

The package is pure Python; if Cython and a C compiler are available, a small
extension module with the hot kernels (monomial products, integer matrix rank)
is built as well.  Everything works without it: higgscalc.kernels falls back to
the pure-Python implementations at import time.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/higgscalc/_kernels.pyx"],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
