"""Kernel backend selection.

Two interchangeable backends implement the solver kernels: ``py`` (pure
Python, always available) and ``c`` (Cython extension, built at install
time).  The compiled backend is preferred when importable; the
environment variable COPWIN_ENGINE=py|c forces a choice.  The compiled
kernels cap n at 62 vertices (one machine word per vertex set); the
pure backend has no such limit, and the selector falls back to it for
oversized inputs.
"""
from __future__ import annotations

import os

from . import pykernels

_C_MAX_N = 62

try:  # pragma: no cover - exercised only when the extension is built
    from . import _ckernels
except ImportError:  # pragma: no cover
    _ckernels = None

_BACKENDS = {"py": pykernels}
if _ckernels is not None:
    _BACKENDS["c"] = _ckernels


def available_backends():
    return dict(_BACKENDS)


def default_backend_name() -> str:
    env = os.environ.get("COPWIN_ENGINE")
    if env:
        if env not in _BACKENDS:
            raise ValueError(
                f"COPWIN_ENGINE={env!r} not available; choices: {sorted(_BACKENDS)}"
            )
        return env
    return "c" if "c" in _BACKENDS else "py"


def get_backend(name=None, n=None):
    """Resolve a backend by name (or the default), honoring size limits."""
    if name is None:
        name = default_backend_name()
    try:
        backend = _BACKENDS[name]
    except KeyError:
        raise ValueError(f"unknown engine {name!r}; choices: {sorted(_BACKENDS)}") from None
    if backend is not pykernels and n is not None and n > _C_MAX_N:
        return pykernels
    return backend
