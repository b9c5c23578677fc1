"""Optional Cython build of the elimination kernels.

When Cython or a compiler is missing, the package installs without the
extension and falls back to the numpy kernels.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("quadrel._kernels", ["src/quadrel/_kernels.pyx"])],
        compiler_directives={"language_level": "3"},
        quiet=True,
    )
    for ext in ext_modules:
        ext.include_dirs.append(numpy.get_include())
        ext.extra_compile_args.append("-O3")
except Exception:  # pragma: no cover - build-time fallback
    ext_modules = []

setup(ext_modules=ext_modules)
