import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None


class optional_build_ext(build_ext):
    # the package falls back to the numpy kernel when compilation fails

    def run(self):
        try:
            super().run()
        except Exception as exc:
            print(f"warning: compiled kernel not built ({exc})", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: could not build {ext.name} ({exc})", file=sys.stderr)


ext_modules = []
if cythonize is not None:
    try:
        ext_modules = cythonize(
            [Extension("ndimscatter._kernels", ["src/ndimscatter/_kernels.pyx"],
                       extra_compile_args=["-O3"])],
            compiler_directives={"language_level": "3"},
        )
    except Exception as exc:
        print(f"warning: cythonize failed ({exc}); using the numpy kernel", file=sys.stderr)

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
