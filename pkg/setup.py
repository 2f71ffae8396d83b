"""Builds the optional Cython kernels; the package works without them."""
import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("SIMUL_LATENCY_PURE_PYTHON"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "simul_latency._kernels_c",
                    ["src/simul_latency/_kernels_c.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
