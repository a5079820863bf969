"""Hot numeric kernels: numba-jitted with a pure-numpy fallback.

The backend is chosen once at import from the environment:

    HOPFIX_NO_NUMBA=1   force the numpy path

and can be overridden at runtime with :func:`set_backend` (used by the
benchmark and by tests that exercise both paths). If numba is not
importable the numpy path is selected automatically.
"""

from __future__ import annotations

import os

_env = os.environ.get("HOPFIX_NO_NUMBA", "").strip().lower()
_want_numpy = _env in {"1", "true", "yes", "on"}

try:  # pragma: no cover - exercised implicitly
    import numba  # noqa: F401

    _numba_available = True
except ImportError:  # pragma: no cover
    _numba_available = False

_backend = "numpy" if (_want_numpy or not _numba_available) else "numba"


def numba_available() -> bool:
    return _numba_available


def get_backend() -> str:
    return _backend


def set_backend(name: str) -> None:
    global _backend
    if name not in ("numba", "numpy"):
        raise ValueError("backend must be 'numba' or 'numpy'")
    if name == "numba" and not _numba_available:
        raise RuntimeError("numba backend requested but numba is not installed")
    _backend = name


from .projection import project_point, project_points  # noqa: E402
from .dynamics import iterate_batch, newton_batch  # noqa: E402

__all__ = [
    "get_backend",
    "set_backend",
    "numba_available",
    "project_point",
    "project_points",
    "iterate_batch",
    "newton_batch",
]
