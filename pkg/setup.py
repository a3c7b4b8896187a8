"""Build script: compiles the optional GF(p) elimination kernel.

The extension is an accelerator only.  If Cython or a C compiler is
missing (or WLPCI_NO_EXT is set), the install proceeds and the package
falls back to the numpy kernel at import time.
"""

import os
import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext
from setuptools.errors import CCompilerError, ExecError, PlatformError

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None


class optional_build_ext(build_ext):
    """build_ext that degrades to a pure install on compiler failure."""

    def run(self):
        try:
            build_ext.run(self)
        except (PlatformError, FileNotFoundError) as exc:
            self._skip(exc)

    def build_extension(self, ext):
        try:
            build_ext.build_extension(self, ext)
        except (CCompilerError, ExecError, PlatformError, ValueError) as exc:
            self._skip(exc)

    def _skip(self, exc):
        sys.stderr.write(
            f"warning: building wlpci._gfrank failed ({exc}); "
            "installing with the pure-python kernel only\n"
        )


if sys.platform == "win32":
    compile_args = ["/O2"]
else:
    compile_args = ["-O3"]

extensions = [
    Extension(
        "wlpci._gfrank",
        ["src/wlpci/_gfrank.pyx"],
        extra_compile_args=compile_args,
    )
]

if cythonize is not None and not os.environ.get("WLPCI_NO_EXT"):
    ext_modules = cythonize(
        extensions,
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
else:
    ext_modules = []

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
