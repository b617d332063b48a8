"""Build script for the optional compiled grid kernels.

The package works without the extension: lrpossib.kernels falls back to the
numpy implementation when lrpossib._gridcore is absent, so the Cython build
is marked optional and a failed compile only costs speed.
"""
from setuptools import Extension, setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "lrpossib._gridcore",
                ["src/lrpossib/_gridcore.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
