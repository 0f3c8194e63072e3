from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # Pure-python fallback kernels are selected at import time, so the
    # package still works without the compiled extension.
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("oscdetect._kernels", ["src/oscdetect/_kernels.pyx"])],
        language_level=3,
    )

setup(ext_modules=ext_modules)
