"""Build script for the optional compiled kernel extension.

The package is fully functional without the extension; periframe.kernels
falls back to the numpy implementation when the compiled module is absent.
Build in place with:  python setup.py build_ext --inplace
"""

import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "periframe.kernels._fastkern",
                sources=["src/periframe/kernels/_fastkern.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
