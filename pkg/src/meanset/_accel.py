"""Optional numba acceleration.

Kernels are written as plain numpy loops and decorated with :func:`njit`.
When numba is missing, or ``MEANSET_NO_NUMBA`` is set to anything other than
``""``/``"0"``, the decorator is a no-op and the same source runs under CPython.
"""

import os

_flag = os.environ.get("MEANSET_NO_NUMBA", "").strip()
DISABLED = _flag not in ("", "0")

try:
    if DISABLED:
        raise ImportError
    import numba as _numba
except ImportError:
    _numba = None

HAVE_NUMBA = _numba is not None


def njit(*args, **kwargs):
    """``numba.njit(cache=True)`` when available, identity otherwise.

    The undecorated function stays reachable as ``.py_func`` either way.
    """
    def wrap(fn):
        if _numba is None:
            fn.py_func = fn
            return fn
        kwargs.setdefault("cache", True)
        return _numba.njit(**kwargs)(fn)

    if len(args) == 1 and callable(args[0]) and not kwargs:
        return wrap(args[0])
    return wrap
