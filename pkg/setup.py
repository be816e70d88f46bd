import sys

from setuptools import setup

# The compiled kernel is optional: the package falls back to the pure-Python
# implementation in exmatch._purecore when the extension is unavailable.
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/exmatch/_fastcore.pyx"],
        compiler_directives={"language_level": "3"},
    )
    for m in ext_modules:
        m.extra_compile_args = ["-O3"]
except Exception as exc:  # pragma: no cover
    print(f"warning: building without compiled kernels ({exc})", file=sys.stderr)
    ext_modules = []

setup(ext_modules=ext_modules)
