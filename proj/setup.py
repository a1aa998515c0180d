import os

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup


def eigen_include():
    override = os.environ.get("EIGEN3_INCLUDE_DIR")
    candidates = [override] if override else []
    candidates += ["/usr/include/eigen3", "/usr/local/include/eigen3"]
    for path in candidates:
        if path and os.path.isdir(os.path.join(path, "Eigen")):
            return path
    raise RuntimeError(
        "Eigen headers not found; set EIGEN3_INCLUDE_DIR to the directory "
        "containing Eigen/Core"
    )


# io.cpp is CLI-only (file formats); the python module links the math core.
core_sources = [
    "src/model.cpp",
    "src/schedule.cpp",
    "src/fliess.cpp",
    "src/sim.cpp",
    "src/solver.cpp",
    "src/cases.cpp",
]

ext_modules = [
    Pybind11Extension(
        "cstrcycle._core",
        ["bindings/pymodule.cpp"] + core_sources,
        include_dirs=["include", eigen_include()],
        cxx_std=20,
    )
]

setup(ext_modules=ext_modules, cmdclass={"build_ext": build_ext})
