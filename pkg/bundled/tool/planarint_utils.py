# Copyright (c) planarint contributors. All rights reserved.
# Licensed under the MIT License.
"""Utility functions and classes shared by the planarint solvers."""
from __future__ import annotations

import enum
import json
import logging
import os
import sys
import traceback
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, Iterable, List, Optional, TypeVar, Union

import cattrs

T = TypeVar("T")
R = TypeVar("R")

INF_TOKEN = "inf"
MAX_THREADS = 8


# **********************************************************
# Extended integers.
# **********************************************************
class Infinity:
    """The INF sentinel of the extended integers.

    INF absorbs finite additions and compares above every integer. It can
    never be subtracted, and nothing can be subtracted from it.
    """

    _instance: Optional["Infinity"] = None

    def __new__(cls) -> "Infinity":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    def __str__(self) -> str:
        return INF_TOKEN

    def __reduce__(self):
        return (Infinity, ())

    def __hash__(self) -> int:
        return hash(INF_TOKEN)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Infinity)

    def __ne__(self, other: object) -> bool:
        return not isinstance(other, Infinity)

    def __lt__(self, other: object) -> bool:
        _check_comparable(other)
        return False

    def __le__(self, other: object) -> bool:
        _check_comparable(other)
        return isinstance(other, Infinity)

    def __gt__(self, other: object) -> bool:
        _check_comparable(other)
        return not isinstance(other, Infinity)

    def __ge__(self, other: object) -> bool:
        _check_comparable(other)
        return True

    def __add__(self, other: object) -> "Infinity":
        _check_comparable(other)
        return self

    __radd__ = __add__

    def __sub__(self, other: object):
        raise ArithmeticError("INF - x is undefined")

    def __rsub__(self, other: object):
        raise ArithmeticError("INF cannot be subtracted")

    def __neg__(self):
        raise ArithmeticError("-INF is undefined")


def _check_comparable(other: object) -> None:
    if isinstance(other, bool) or not isinstance(other, (int, Infinity)):
        raise TypeError(f"INF cannot be combined with {other!r}")


INF = Infinity()
ExtInt = Union[int, Infinity]


def is_inf(value: Any) -> bool:
    """Returns True for the INF sentinel."""
    return isinstance(value, Infinity)


def ext_sum(values: Iterable[ExtInt]) -> ExtInt:
    """Sums extended integers; any INF makes the sum INF."""
    total: ExtInt = 0
    for value in values:
        total = total + value
    return total


# **********************************************************
# Errors.
# **********************************************************
class PlanarIntError(Exception):
    """Base class of every error raised by planarint."""

    exit_code = 1


class InstanceError(PlanarIntError):
    """Malformed instance data: bad JSON, unknown ids or invalid values."""


class MalformedRotation(InstanceError):
    """A rotation misses or duplicates an arc-endpoint."""


class NotSimpleGraph(InstanceError):
    """An undirected input graph has self-loops or parallel edges."""


class ValidationFailed(PlanarIntError):
    """An instance parsed but failed validation."""

    exit_code = 2

    def __init__(self, message: str, report: Any = None) -> None:
        super().__init__(message)
        self.report = report


class OracleMismatch(PlanarIntError):
    """A solver and the brute-force oracle disagree."""

    exit_code = 3

    def __init__(self, message: str, diff: Any = None) -> None:
        super().__init__(message)
        self.diff = diff


class PreconditionError(PlanarIntError):
    """A solver precondition does not hold for the given instance."""

    exit_code = 4


class Unreachable(PreconditionError):
    """The sink cannot be reached from the source by directed arcs."""


class PathNotInNetwork(PreconditionError):
    """A path handed to the parity labelling is not a directed path."""


class GadgetOnTerminal(PreconditionError):
    """A source or sink carries a finite vertex capacity."""


class TerminalRemovable(PreconditionError):
    """A source or sink has a finite interdiction cost."""


class Disconnected(PreconditionError):
    """The underlying undirected graph is not connected."""


class PreconditionUnsatisfiable(PreconditionError):
    """No saturating flow exists before any interdiction."""


class TooLarge(PreconditionError):
    """An instance exceeds the brute-force enumeration bound."""


class InvalidInterdictionSet(PreconditionError):
    """An interdiction set does not fit the instance it is applied to."""


class UnsupportedInstance(PreconditionError):
    """The instance uses a feature the selected solver does not support."""


# **********************************************************
# Logging.
# **********************************************************
LOGGER = logging.getLogger("planarint")


class MessageType(enum.IntEnum):
    """Message kinds, ordered like the language server protocol ones."""

    Error = 1
    Warning = 2
    Info = 3
    Log = 4
    Debug = 5


_LEVELS = {
    MessageType.Error: logging.ERROR,
    MessageType.Warning: logging.WARNING,
    MessageType.Info: logging.INFO,
    MessageType.Log: logging.INFO,
    MessageType.Debug: logging.DEBUG,
}


def configure_logging(level: str = "warning") -> None:
    """Attaches a standard error handler to the package logger once."""
    if not any(getattr(h, "_planarint", False) for h in LOGGER.handlers):
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
        handler._planarint = True  # type: ignore[attr-defined]
        LOGGER.addHandler(handler)
    LOGGER.setLevel(getattr(logging, level.upper(), logging.WARNING))


def log_to_output(message: str, msg_type: MessageType = MessageType.Log) -> None:
    LOGGER.log(_LEVELS[msg_type], message)


def log_error(message: str) -> None:
    LOGGER.error(message)
    if os.getenv("PLANARINT_SHOW_TRACE", "off") == "on":
        LOGGER.error(traceback.format_exc())


def log_warning(message: str) -> None:
    LOGGER.warning(message)


def log_always(message: str) -> None:
    LOGGER.info(message)


# **********************************************************
# Worker pool.
# **********************************************************
def parse_thread_count(raw: str) -> int:
    """Reads a thread setting; anything that is not a non-negative integer means auto (0)."""
    try:
        requested = int(raw)
    except ValueError:
        log_warning(f"Ignoring invalid PLANARINT_THREADS value: {raw!r}")
        return 0
    return max(requested, 0)


def get_thread_count() -> int:
    """Returns the worker count from PLANARINT_THREADS (0 means auto)."""
    requested = parse_thread_count(os.getenv("PLANARINT_THREADS", "0"))
    if requested <= 0:
        requested = min(4, os.cpu_count() or 1)
    return min(requested, MAX_THREADS)


def parallel_map(func: Callable[[T], R], items: Iterable[T]) -> List[R]:
    """Maps `func` over `items`, preserving order of the results."""
    items = list(items)
    workers = min(get_thread_count(), len(items))
    if workers <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))


# **********************************************************
# JSON conversion.
# **********************************************************
def _structure_ext(value: Any, _type: Any) -> ExtInt:
    if isinstance(value, str) and value.strip().lower() == INF_TOKEN:
        return INF
    if isinstance(value, bool) or not isinstance(value, int):
        raise InstanceError(f"Expected an integer or {INF_TOKEN!r}, got {value!r}")
    return value


def _structure_optional_ext(value: Any, _type: Any) -> Optional[ExtInt]:
    if value is None:
        return None
    return _structure_ext(value, _type)


def _make_converter() -> cattrs.Converter:
    converter = cattrs.Converter()
    converter.register_structure_hook_func(lambda t: t == ExtInt, _structure_ext)
    converter.register_structure_hook_func(
        lambda t: t == Optional[ExtInt], _structure_optional_ext
    )
    converter.register_unstructure_hook(Infinity, lambda _value: INF_TOKEN)
    return converter


CONVERTER = _make_converter()


def describe_structure_error(exc: Exception) -> str:
    """Flattens a cattrs validation error into one readable line."""
    if isinstance(exc, cattrs.BaseValidationError):
        return "; ".join(cattrs.transform_error(exc))
    return str(exc)


def to_jsonable(value: Any) -> Any:
    """Unstructures attrs values (and INF) into plain JSON data."""
    return CONVERTER.unstructure(value)


def dumps_json(data: Any) -> str:
    """Serialises plain JSON data deterministically (sorted keys)."""
    return json.dumps(data, indent=4, sort_keys=True, ensure_ascii=False)
