import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("NOISE_LATTICE_PURE") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "noise_lattice._speedups",
                    ["src/noise_lattice/_speedups.pyx"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # No Cython: the pure-Python kernels are used instead.
        pass

setup(ext_modules=ext_modules)
