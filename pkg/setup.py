"""Build script: compiles the optional Cython kernel extension.

The extension is marked optional; if no C compiler (or Cython) is available
the install still succeeds and the package falls back to the NumPy kernels
at import time.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None:
    ext = Extension(
        "dronelink._kernels._core",
        sources=["src/dronelink/_kernels/_core.pyx"],
        optional=True,
    )
    ext_modules = cythonize(
        [ext],
        language_level="3",
        compiler_directives={
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )

setup(ext_modules=ext_modules)
