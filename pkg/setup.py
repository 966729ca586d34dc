"""Build script.  The Cython kernel is optional: when Cython or a C compiler
is unavailable the package installs without the extension and the pure-Python
kernel is selected at import time."""

import os

from setuptools import setup
from setuptools.command.build_ext import build_ext


def extensions():
    if os.environ.get("POLPOISSON_NO_EXT") == "1":
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    return cythonize(
        ["src/polpoisson/_kernel/_speedups.pyx"],
        compiler_directives={"language_level": "3"},
    )


class optional_build_ext(build_ext):
    """Swallow compiler failures so the pure-Python install still succeeds."""

    def run(self):
        try:
            build_ext.run(self)
        except Exception as exc:
            print(f"warning: building the compiled kernel failed ({exc}); "
                  "falling back to the pure-Python kernel")

    def build_extension(self, ext):
        try:
            build_ext.build_extension(self, ext)
        except Exception as exc:
            print(f"warning: {ext.name} failed to compile ({exc}); "
                  "falling back to the pure-Python kernel")


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})
