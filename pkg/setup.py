from Cython.Build import cythonize
from setuptools import Extension, setup

setup(
    ext_modules=cythonize(
        [
            Extension(
                "matchbound._kernels._native",
                ["src/matchbound/_kernels/_native.pyx"],
            )
        ],
        language_level=3,
    ),
)
