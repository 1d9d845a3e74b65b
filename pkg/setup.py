from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install; the fallback backend is used
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "vfive._search",
                ["src/vfive/_search.pyx"],
                language="c++",
                extra_compile_args=["-O3", "-ffp-contract=off", "-std=c++17"],
            )
        ],
        compiler_directives={"language_level": 3},
    )

setup(ext_modules=ext_modules)
