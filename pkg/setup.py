"""Build hook for the optional compiled kernels.

Metadata lives in pyproject.toml. If Cython or a C compiler is missing the
package still installs and runs on the pure-Python kernels.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "complexcf.kernels._ckernels",
                ["src/complexcf/kernels/_ckernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except Exception:  # noqa: BLE001 - any build-tool failure means fallback
    ext_modules = []

setup(ext_modules=ext_modules)
