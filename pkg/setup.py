"""Build script: compiles the optional Cython integrator kernel.

The package works without the compiled extension (a numpy fallback is
selected at import time), so a failed extension build is downgraded to
a warning rather than aborting the install.
"""

import warnings

from setuptools import setup

try:
    import numpy as np
    from Cython.Build import cythonize
    from setuptools.extension import Extension

    ext_modules = cythonize(
        [
            Extension(
                "quadropt.kernels._rk4",
                ["src/quadropt/kernels/_rk4.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    warnings.warn(f"building without compiled kernel: {exc}")
    ext_modules = []

setup(ext_modules=ext_modules)
