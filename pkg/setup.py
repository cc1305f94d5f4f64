"""Build script: compiles the optional solver extension.

The compiled kernels are an accelerator only.  If Cython (or a C
compiler) is unavailable the package installs fine and falls back to
the pure-Python kernels at import time.  Set COPWIN_NO_EXT=1 to skip
the extension on purpose.
"""
import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("COPWIN_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "copwin.engine._ckernels",
                    ["src/copwin/engine/_ckernels.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
