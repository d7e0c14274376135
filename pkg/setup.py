"""Build hook for the optional GMP-backed accelerator extension.

The extension is marked optional: if a C toolchain or the GMP headers are
missing, the build emits a warning and the pure-Python fallback paths are
used instead.  Everything in the package works either way.
"""

from setuptools import Extension, setup

setup(
    ext_modules=[
        Extension(
            "permrat._fastpoly",
            sources=["src/permrat/_fastpoly.c"],
            libraries=["gmp"],
            optional=True,
        )
    ]
)
