import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("FANLAB_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("fanlab.polymat._speedups",
                       ["src/fanlab/polymat/_speedups.pyx"])],
            language_level="3",
        )
    except Exception as exc:  # pure-Python fallback is selected at import
        print(f"fanlab: building without the compiled core ({exc})")
        ext_modules = []

setup(ext_modules=ext_modules)
