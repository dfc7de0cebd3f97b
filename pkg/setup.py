import os
import sys

from setuptools import Extension, setup

# The compiled kernel is optional: the package falls back to the pure-Python
# implementation in xmap._fallback when the extension is absent.
ext_modules = []
if os.environ.get("XMAP_SKIP_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("xmap._speedups", ["src/xmap/_speedups.pyx"])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        print("Cython not available; building without the compiled kernel", file=sys.stderr)

setup(ext_modules=ext_modules)
