import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "carpet._kernel",
                sources=["src/carpet/_kernel.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
else:
    # Pure-Python fallback kernel is selected at import time, so a build
    # without Cython still produces a working package.
    ext_modules = []

setup(ext_modules=ext_modules)
