from Cython.Build import cythonize
from setuptools import Extension, setup

extensions = [
    Extension("pctreap._ctreap", ["src/pctreap/_ctreap.pyx"], extra_compile_args=["-O3"]),
    Extension("pctreap._csim", ["src/pctreap/_csim.pyx"], language="c++", extra_compile_args=["-O3"]),
]

setup(ext_modules=cythonize(extensions, compiler_directives={"language_level": "3"}))
