from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python fallback is used at runtime
    cythonize = None

extensions = [
    Extension(
        "noisyops._kernels",
        ["src/noisyops/_kernels.pyx"],
        extra_compile_args=["-O3"],
    )
]

setup(
    ext_modules=(
        cythonize(extensions, compiler_directives={"language_level": "3"})
        if cythonize is not None
        else []
    ),
)
