"""Backend selection for the compiled kernels.

Set ``MIXBOUND_NO_JIT=1`` to force the pure-numpy paths; they are also used
automatically when numba is not importable.
"""

from __future__ import annotations

import os

_FLAG = os.environ.get("MIXBOUND_NO_JIT", "").strip().lower()
JIT_REQUESTED = _FLAG in ("", "0", "false", "no", "off")

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]

        def decorator(func):
            return func

        return decorator


USE_JIT = HAVE_NUMBA and JIT_REQUESTED


def backend_name() -> str:
    return "numba" if USE_JIT else "numpy"
