"""Build script: compiles the optional convolution kernel extension.

The package is pure Python except for ``etaq._ckernels``, a Cython
translation of ``etaq._kernels_py``.  If Cython or a C compiler is
unavailable the extension is skipped and the import-time fallback in
``etaq.kernels`` selects the pure-Python backend.  Set ETAQ_NO_EXT=1 to
force a pure-Python build.
"""

import os

from setuptools import setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """build_ext that downgrades compile failures to a warning."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            print(f"warning: skipping C kernels ({exc}); pure-Python backend will be used")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: failed to build {ext.name} ({exc}); pure-Python backend will be used")


ext_modules = []
if not os.environ.get("ETAQ_NO_EXT"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("etaq._ckernels", ["src/etaq/_ckernels.pyx"])],
            language_level="3",
        )
    except ImportError:
        print("warning: Cython not available; pure-Python backend will be used")

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
