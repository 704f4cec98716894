"""Build script: compiles the optional counting kernel.

The compiled extension is a pure speedup; the package falls back to
src/tritgame/_kernel_py.py when it is absent.  Set TRITGAME_PURE_PYTHON=1
to skip the extension build entirely.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("TRITGAME_PURE_PYTHON") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("tritgame._kernel", ["src/tritgame/_kernel.pyx"])],
            language_level="3",
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
