"""Build script: compiles the optional Cython blade-product kernel.

The package is fully functional without the extension (a pure-Python
twin of the kernel is selected at import time), so any build failure
here downgrades to the fallback instead of breaking the install.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/spingeo/kernels/_compiled.pyx"],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
