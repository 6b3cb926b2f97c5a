from setuptools import Extension, setup
from Cython.Build import cythonize

# The compiled kernels are optional: if the extension fails to build, the
# package falls back to the numpy implementations at import time.
ext_modules = [
    Extension(
        "blochlab._kernels",
        ["src/blochlab/_kernels.pyx"],
        extra_compile_args=["-O3"],
        optional=True,
    )
]

setup(ext_modules=cythonize(ext_modules, language_level=3))
