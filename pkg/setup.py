import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("ARRCOVER_NO_EXT", "") != "1":
    try:
        import numpy as np
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "arrcover._ckernels",
                    ["src/arrcover/_ckernels.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3"],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # no Cython/numpy at build time: pure-Python kernels only
        ext_modules = []

setup(ext_modules=ext_modules)
