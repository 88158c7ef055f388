"""Build the optional compiled lattice kernels; the package works without them."""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("BOUNDARY_LAX_NO_EXT") != "1":
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "boundary_lax.monodromy._kernels",
                    ["src/boundary_lax/monodromy/_kernels.pyx"],
                    include_dirs=[np.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
