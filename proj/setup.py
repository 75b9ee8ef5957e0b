import os
import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name: str):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext: CMakeExtension) -> None:
        extdir = Path(self.get_ext_fullpath(ext.name)).parent.resolve()
        source_dir = Path(__file__).parent.resolve()
        build_temp = Path(self.build_temp) / "cmake"
        build_temp.mkdir(parents=True, exist_ok=True)

        env = dict(os.environ, MOTIFLOG_PIP_BUILD="1")
        configure = [
            "cmake",
            str(source_dir),
            "-DCMAKE_BUILD_TYPE=Release",
            f"-DCMAKE_LIBRARY_OUTPUT_DIRECTORY={extdir}",
            f"-DPython3_EXECUTABLE={sys.executable}",
            "-DMOTIFLOG_BUILD_TESTS=OFF",
            "-DMOTIFLOG_BUILD_CLI=OFF",
            "-DMOTIFLOG_BUILD_PYTHON=ON",
        ]
        subprocess.run(configure, cwd=build_temp, check=True, env=env)
        subprocess.run(
            ["cmake", "--build", ".", "--target", "_core", "--parallel"],
            cwd=build_temp,
            check=True,
            env=env,
        )


setup(
    ext_modules=[CMakeExtension("motiflog._core")],
    cmdclass={"build_ext": CMakeBuild},
)
