from setuptools import Extension, setup
from Cython.Build import cythonize

extensions = [
    Extension(
        "mtbalign.kernels._native",
        ["src/mtbalign/kernels/_native.pyx"],
        extra_compile_args=["-O3"],
    )
]

setup(ext_modules=cythonize(extensions, language_level=3))
