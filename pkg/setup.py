"""Build the optional compiled kernels. Without Cython the package falls back to numpy."""
from setuptools import setup

try:
    from Cython.Build import cythonize
    from setuptools import Extension
except ImportError:  # pragma: no cover
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("qdimer.kernels._rk4", ["src/qdimer/kernels/_rk4.pyx"],
                   extra_compile_args=["-O3"])],
        language_level=3,
    )

setup(ext_modules=ext_modules)
