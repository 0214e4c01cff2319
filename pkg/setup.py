"""Build script: compiles the optional reachability speedup extension.

The package works without the extension (a pure-Python kernel is selected
at import time), so any build failure here is non-fatal.
"""
import sys

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("causeway._core._speedups", ["src/causeway/_core/_speedups.pyx"])],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover
    sys.stderr.write(f"causeway: skipping compiled kernel ({exc}); using pure-Python fallback\n")

setup(ext_modules=ext_modules)
