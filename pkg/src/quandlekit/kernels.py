"""Backend selection for the hot loops.

The compiled ``_ckernels`` extension is used when it imports; otherwise, or
when ``QUANDLEKIT_PURE=1`` is set, the pure-Python module takes over. Inputs
that could overflow 64-bit arithmetic always go to the Python backend.
"""

from __future__ import annotations

import os
from array import array

from . import _kernels_py

_INT64_SAFE = 1 << 62

if os.environ.get("QUANDLEKIT_PURE") == "1":
    _ck = None
else:
    try:
        from . import _ckernels as _ck
    except ImportError:  # extension not built
        _ck = None

BACKEND = "compiled" if _ck is not None else "python"


def backend(name: str | None = None):
    """Module implementing the kernels: 'compiled', 'python' or the active default."""
    if name is None:
        name = BACKEND
    if name == "compiled":
        if _ck is None:
            raise ImportError("compiled kernels are not built")
        return _ck
    if name == "python":
        return _kernels_py
    raise ValueError(f"unknown backend {name!r}")


def flatten(table) -> array:
    return array("q", [x for row in table for x in row])


def q3_violation(flat, n, use=None):
    return backend(use).q3_violation(flat, n)


def dense_mul(flat, n, u, v, use=None):
    if use is None and _ck is not None:
        mu = max(map(abs, u), default=0)
        mv = max(map(abs, v), default=0)
        if mu * mv * n * n < _INT64_SAFE:
            return _ck.dense_mul(flat, n, u, v)
        return _kernels_py.dense_mul(flat, n, u, v)
    return backend(use).dense_mul(flat, n, u, v)


def box_idempotents(flat, n, bound, prune, use=None):
    if use is None and (bound * bound * n * n >= _INT64_SAFE):
        use = "python"
    return backend(use).box_idempotents(flat, n, bound, prune)


def mod_idempotents(flat, n, m, prune, use=None):
    if use is None and (m * m * n * n >= _INT64_SAFE):
        use = "python"
    return backend(use).mod_idempotents(flat, n, m, prune)
