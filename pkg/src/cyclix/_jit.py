"""JIT switch for the numeric kernels.

Set ``CYCLIX_DISABLE_NUMBA=1`` (or numba's own ``NUMBA_DISABLE_JIT=1``) to
route every kernel through its pure-numpy implementation.
"""

import os

_FALSY = ("", "0", "false", "no", "off")


def _flag(name: str) -> bool:
    return os.environ.get(name, "").strip().lower() not in _FALSY


try:
    import numba

    NUMBA_AVAILABLE = not _flag("NUMBA_DISABLE_JIT")
except ImportError:  # pragma: no cover
    numba = None
    NUMBA_AVAILABLE = False

USE_NUMBA = NUMBA_AVAILABLE and not _flag("CYCLIX_DISABLE_NUMBA")


def maybe_njit(fn):
    """Compile ``fn`` with numba when it is importable, else return None."""
    if not NUMBA_AVAILABLE:
        return None
    return numba.njit(cache=True, nogil=True)(fn)
