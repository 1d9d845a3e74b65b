"""Backend selection for the level-scan kernel.

The compiled extension is used when it imports; setting ``VFIVE_PURE_PYTHON``
to a non-empty value forces the pure-Python fallback.
"""
from __future__ import annotations

import os

from . import _search_py

try:
    from . import _search as _compiled
except ImportError:  # extension not built
    _compiled = None

COMPILED_MAX_LEVEL = 44


def available_backends() -> list[str]:
    return ["compiled", "python"] if _compiled is not None else ["python"]


def _default_backend() -> str:
    if os.environ.get("VFIVE_PURE_PYTHON") or _compiled is None:
        return "python"
    return "compiled"


BACKEND = _default_backend()


def search_level(level, target, tau, eps, *, backend: str | None = None, **kwargs):
    """Dispatch one level scan; returns ``(hits, table_size, probes)``.

    Levels beyond the 128-bit kernel's range go to the Python backend.
    """
    name = backend or BACKEND
    if name == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled backend is not built")
        if level <= COMPILED_MAX_LEVEL:
            return _compiled.search_level(level, tuple(target), tau, eps, **kwargs)
    elif name != "python":
        raise ValueError(f"unknown backend {name!r}")
    return _search_py.search_level(level, tuple(target), tau, eps, **kwargs)
