"""Builds the dfield_py extension module by delegating to cargo.

The extension lives in crates/py as an ordinary cargo crate; this shim
compiles it in release mode and copies the produced shared library to
wherever setuptools expects the module, so `pip install -e . \
--no-build-isolation` works without any Rust-specific build backend.
"""

import shutil
import subprocess
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CargoBuildExt(build_ext):
    def build_extension(self, ext):
        root = Path(__file__).resolve().parent
        subprocess.run(
            ["cargo", "build", "--release", "-p", "dfield-py"],
            cwd=root,
            check=True,
        )
        release = root / "target" / "release"
        for name in ("libdfield_py.so", "libdfield_py.dylib", "dfield_py.dll"):
            built = release / name
            if built.exists():
                break
        else:
            raise FileNotFoundError(f"no built extension library in {release}")
        dest = Path(self.get_ext_fullpath(ext.name))
        dest.parent.mkdir(parents=True, exist_ok=True)
        shutil.copyfile(built, dest)


setup(
    ext_modules=[Extension("dfield_py", sources=[])],
    cmdclass={"build_ext": CargoBuildExt},
)
