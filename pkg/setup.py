"""Build script: compiles the optional exact-arithmetic kernel extension.

The package works without the extension (a pure-Python twin of the kernels is
selected at import time), so any failure to build it is non-fatal.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("taurec._kernels", ["src/taurec/_kernels.pyx"])],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
