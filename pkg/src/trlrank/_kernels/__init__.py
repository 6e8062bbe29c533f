"""Kernel backend selection.

The env var ``TRLRANK_BACKEND`` picks the counting kernels:

* ``numba``: jitted kernels (error if numba is unavailable),
* ``numpy``: pure-numpy vectorized fallback,
* ``auto`` (default): numba when importable, else numpy.

Both backends expose the same three functions and produce identical
results; ``benchmarks/bench_backends.py`` compares their speed.
"""

import os

from ..errors import ValidationError

ENV_VAR = "TRLRANK_BACKEND"

_cache: dict = {}


def get_backend(name: str | None = None):
    """Return the backend module for ``name`` (or the env-var choice)."""
    if name is None:
        name = os.environ.get(ENV_VAR, "auto").strip().lower() or "auto"
    if name not in ("auto", "numba", "numpy"):
        raise ValidationError(
            f"{ENV_VAR} must be 'numba', 'numpy' or 'auto', got {name!r}"
        )
    if name in _cache:
        return _cache[name]
    if name in ("auto", "numba"):
        try:
            from . import numba_backend as mod
        except ImportError:
            if name == "numba":
                raise ValidationError("numba backend requested but numba is not importable")
            from . import numpy_backend as mod
    else:
        from . import numpy_backend as mod
    _cache[name] = mod
    return mod


def active_backend():
    return get_backend(None)


def backend_name() -> str:
    return active_backend().NAME
