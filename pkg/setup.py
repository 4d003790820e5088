"""Build script: compiles the optional search-kernel extension.

The package works without the extension (a pure-Python twin is selected at
import time), but the exhaustive sweeps in the acceptance suite only meet
their stated runtimes with the compiled kernels.
"""

from setuptools import setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Skip the extension instead of failing the whole install."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # pragma: no cover - toolchain dependent
            print(f"warning: skipping compiled kernels ({exc}); "
                  "falling back to pure Python")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # pragma: no cover - toolchain dependent
            print(f"warning: could not build {ext.name} ({exc}); "
                  "falling back to pure Python")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:  # pragma: no cover - cython not installed
        return []
    from setuptools import Extension

    return cythonize(
        [
            Extension(
                "systema._kernels._ext",
                ["src/systema/_kernels/_ext.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})
