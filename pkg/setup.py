"""Build script: compiles the optional coverage kernel extension.

The package is fully functional without the extension; a pure-numpy
fallback is selected at import time if the build is skipped or fails.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("sdmc._coverage", ["src/sdmc/_coverage.pyx"])],
        language_level="3",
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
