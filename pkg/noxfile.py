# Copyright (c) planarint contributors. All rights reserved.
# Licensed under the MIT License.
"""All the action we need during build"""
import os
import pathlib
from typing import List

import nox  # pylint: disable=import-error

SOURCES = ["./bundled/tool", "./src/test/python_tests", "noxfile.py"]


def _install_bundle(session: nox.Session) -> None:
    session.install(
        "-t",
        "./bundled/libs",
        "--no-cache-dir",
        "--implementation",
        "py",
        "--no-deps",
        "--upgrade",
        "-r",
        "./requirements.txt",
    )


def _check_files(names: List[str]) -> None:
    root_dir = pathlib.Path(__file__).parent
    for name in names:
        file_path = root_dir / name
        lines: List[str] = file_path.read_text().splitlines()
        if any(line for line in lines if line.startswith("# TODO:")):
            raise ValueError(f"Please update {os.fspath(file_path)}.")


def _update_pip_packages(session: nox.Session) -> None:
    for requirements in (
        "./requirements.in",
        "./src/test/python_tests/requirements.in",
        "./dev_requirements.in",
    ):
        session.run("pip-compile", "--resolver=backtracking", "--upgrade", requirements)


def _run_cli(session: nox.Session, *args: str) -> None:
    session.run("python", "./bundled/tool/planarint.py", *args)


@nox.session(python="3.8")
def install_bundled_libs(session):
    """Installs the libraries that will be bundled with the tool."""
    session.install("wheel")
    _install_bundle(session)


@nox.session(python="3.8")
def setup(session: nox.Session) -> None:
    """Sets up the tool for development."""
    session.install("wheel", "pip-tools")
    _update_pip_packages(session)
    _install_bundle(session)


@nox.session()
def tests(session: nox.Session) -> None:
    """Runs the solver and command-line tests, without the timed scaling checks."""
    session.install("-r", "./requirements.txt")
    session.install("-r", "src/test/python_tests/requirements.txt")
    session.run(
        "pytest", "--capture=no", "-m", "not slow", "src/test/python_tests", *session.posargs
    )


@nox.session()
def scaling(session: nox.Session) -> None:
    """Runs the timed budget-scaling checks."""
    session.install("-r", "./requirements.txt")
    session.install("-r", "src/test/python_tests/requirements.txt")
    session.run("pytest", "--capture=no", "-m", "slow", "src/test/python_tests")


@nox.session()
def smoke(session: nox.Session) -> None:
    """Generates a grid and solves it with the oracle cross-check."""
    session.install("-r", "./requirements.txt")
    instance = os.fspath(pathlib.Path(session.create_tmp()) / "grid.json")
    _run_cli(
        session,
        "gen",
        "--family",
        "grid",
        "--size",
        "6x6",
        "--seed",
        "1",
        "--vertex-costs",
        "--output",
        instance,
    )
    _run_cli(session, "validate", "--input", instance)
    _run_cli(session, "interdict", "--input", instance, "--budget", "4", "--check")
    _run_cli(session, "security", "--input", instance, "--max-budget", "4")


@nox.session()
def lint(session: nox.Session) -> None:
    """Runs linter and formatter checks on python files."""
    session.install("-r", "./requirements.txt")
    session.install("-r", "src/test/python_tests/requirements.txt")

    session.install("flake8")
    session.run("flake8", "./bundled/tool")
    session.run(
        "flake8",
        "--extend-exclude",
        "./src/test/python_tests/test_data",
        "./src/test/python_tests",
    )
    session.run("flake8", "noxfile.py")

    # check formatting using black
    session.install("black")
    session.run("black", "--check", *SOURCES)

    # check import sorting using isort
    session.install("isort")
    session.run("isort", "--check", "--profile", "black", *SOURCES)


@nox.session()
def build_package(session: nox.Session) -> None:
    """Builds the wheel and source distribution."""
    _check_files(["README.md", "CHANGELOG.md"])
    session.install("build")
    session.run("python", "-m", "build")


@nox.session()
def update_packages(session: nox.Session) -> None:
    """Update pip packages."""
    session.install("wheel", "pip-tools")
    _update_pip_packages(session)
