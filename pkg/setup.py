import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("BERNZETA_NO_EXT", "").strip() in ("", "0"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "bernzeta._binomial_cy",
                    ["src/bernzeta/_binomial_cy.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
