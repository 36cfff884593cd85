"""Build hook: compile the Cython kernels when Cython is available.

Without Cython (or a C compiler) the package installs pure Python and
``fdo.kernels`` falls back to the numpy implementations.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("FDO_PURE_PYTHON", "") in ("", "0"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            ["src/fdo/_kernels.pyx"],
            compiler_directives={"language_level": "3"},
            quiet=True,
        )

setup(ext_modules=ext_modules)
