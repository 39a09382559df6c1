from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("homlie.exactla._rref_cy", ["src/homlie/exactla/_rref_cy.pyx"])],
        language_level=3,
    )
except ImportError:
    # no Cython: the pure-Python kernel is used
    pass

setup(ext_modules=ext_modules)
