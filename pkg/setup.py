from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install; kernels.py falls back
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "gcomplex._ckernels",
                ["src/gcomplex/_ckernels.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
