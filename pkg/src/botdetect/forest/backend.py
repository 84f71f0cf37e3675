"""Split-kernel backend selection.

The compiled extension is used when it imported cleanly; otherwise the
numpy implementation takes over.  Both produce bit-identical splits, so
models do not record which backend trained them.  The environment
variable BOTDETECT_SPLIT_BACKEND (``compiled`` or ``python``) forces a
choice, which the parity tests and the benchmark rely on.
"""

from __future__ import annotations

import os

from ..errors import ConfigError
from . import _splitter_py

try:
    from . import _splitter as _compiled
except ImportError:
    _compiled = None

COMPILED = "compiled"
PYTHON = "python"

_ENV_VAR = "BOTDETECT_SPLIT_BACKEND"


def _select():
    forced = os.environ.get(_ENV_VAR)
    if forced == COMPILED:
        if _compiled is None:
            raise ConfigError(
                "%s=%s but the compiled splitter is unavailable" % (_ENV_VAR, COMPILED)
            )
        return COMPILED, _compiled
    if forced == PYTHON:
        return PYTHON, _splitter_py
    if forced:
        raise ConfigError("unknown %s value %r" % (_ENV_VAR, forced))
    if _compiled is not None:
        return COMPILED, _compiled
    return PYTHON, _splitter_py


_name, _module = _select()


def active_backend() -> str:
    return _name


def compiled_available() -> bool:
    return _compiled is not None


def get_backend(name: str):
    """Backend module by name, independent of the active selection."""
    if name == COMPILED:
        if _compiled is None:
            raise ConfigError("compiled splitter is unavailable")
        return _compiled
    if name == PYTHON:
        return _splitter_py
    raise ConfigError("unknown backend %r" % name)


best_split = _module.best_split
