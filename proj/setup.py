"""Builds the C++ extension through CMake and packages it with the
pure-python wrapper. Works with `pip install --no-build-isolation .`
(or -e for an editable install)."""

import shutil
import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        import pybind11

        source_dir = Path(__file__).parent.resolve()
        build_dir = Path(self.build_temp).resolve()
        build_dir.mkdir(parents=True, exist_ok=True)

        subprocess.run(
            [
                "cmake",
                str(source_dir),
                "-DCMAKE_BUILD_TYPE=Release",
                "-DUQDD_BUILD_CLI=OFF",
                "-DUQDD_BUILD_TESTS=OFF",
                "-DUQDD_BUILD_PYTHON=ON",
                f"-Dpybind11_DIR={pybind11.get_cmake_dir()}",
                f"-DPython3_EXECUTABLE={sys.executable}",
            ],
            cwd=build_dir,
            check=True,
        )
        subprocess.run(
            ["cmake", "--build", ".", "--target", "_uqdd", "--parallel"],
            cwd=build_dir,
            check=True,
        )

        built = sorted(build_dir.glob("_uqdd*.so")) or sorted(build_dir.glob("_uqdd*.pyd"))
        if not built:
            raise RuntimeError(f"extension module not found under {build_dir}")
        target = Path(self.get_ext_fullpath(ext.name))
        target.parent.mkdir(parents=True, exist_ok=True)
        shutil.copy2(built[0], target)


setup(
    packages=["uqdd"],
    package_dir={"uqdd": "python/uqdd"},
    ext_modules=[CMakeExtension("uqdd._uqdd")],
    cmdclass={"build_ext": CMakeBuild},
    zip_safe=False,
)
