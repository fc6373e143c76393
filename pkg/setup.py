"""Build script for the optional compiled enumeration kernel.

The package is pure Python except for gasp._ckernel, a Cython extension
holding the hot bitset loops. The extension is marked optional: if Cython
or a C compiler is missing the install still succeeds and the package
falls back to the pure-Python kernel at import time.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "gasp._ckernel",
                ["src/gasp/_ckernel.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
