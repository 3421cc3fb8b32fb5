"""Build script: compiles the optional Cython core.

The compiled extension ``antkinetics._core`` accelerates the hot kernels
(Bessel K0/K1, pairwise torque sums, the finite-volume step). If Cython or a
C compiler is unavailable the build falls back to a pure-Python install; the
package then selects the NumPy implementation at import time.
"""

import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext


def make_extensions():
    try:
        import numpy
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        return []
    ext = Extension(
        "antkinetics._core",
        ["src/antkinetics/_core.pyx"],
        include_dirs=[numpy.get_include()],
        extra_compile_args=["-O3"],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
    return cythonize([ext], compiler_directives={
        "language_level": "3",
        "boundscheck": False,
        "wraparound": False,
        "cdivision": True,
    })


class OptionalBuildExt(build_ext):
    """Never fail the install because the extension would not compile."""

    def run(self):
        try:
            super().run()
        except Exception as exc:
            print(f"WARNING: extension build failed ({exc}); "
                  "falling back to the pure-Python core", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"WARNING: could not build {ext.name} ({exc}); "
                  "falling back to the pure-Python core", file=sys.stderr)


setup(ext_modules=make_extensions(), cmdclass={"build_ext": OptionalBuildExt})
