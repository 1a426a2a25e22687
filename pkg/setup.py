import numpy
from setuptools import Extension, setup

# The compiled kernels are optional: the package falls back to the numpy
# implementation in pairwave._kernels_py when the extension is absent.
# Build in place with:  python setup.py build_ext --inplace
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "pairwave._core",
                sources=["src/pairwave/_core.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level="3",
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules, include_dirs=[numpy.get_include()])
