import os

from setuptools import Extension, setup

if os.environ.get("WEYLSCOPE_SKIP_EXT"):
    # pure-Python install; the package falls back to the numpy kernels
    setup()
else:
    from Cython.Build import cythonize

    extensions = [
        Extension(
            "weylscope._kernels._speedups",
            ["src/weylscope/_kernels/_speedups.pyx"],
            extra_compile_args=["-O3"],
        )
    ]
    setup(
        ext_modules=cythonize(
            extensions,
            compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
        )
    )
