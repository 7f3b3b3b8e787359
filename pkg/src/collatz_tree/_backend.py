"""Pick the kernel implementation at import time.

The compiled ``_kernels`` extension is used when it was built; set
``COLLATZ_TREE_PURE=1`` to force the pure-Python fallback.
"""

import functools
import os

from . import _fallback

if os.environ.get("COLLATZ_TREE_PURE") == "1":
    kernels = _fallback
else:
    try:
        from . import _kernels as kernels
    except ImportError:
        kernels = _fallback

#: Largest value the compiled kernels accept as a start.
U64_MAX = (1 << 64) - 1


@functools.lru_cache(maxsize=None)
def available() -> dict:
    """Map of backend name to module for every backend that imports."""
    out = {_fallback.NAME: _fallback}
    try:
        from . import _kernels
    except ImportError:
        pass
    else:
        out[_kernels.NAME] = _kernels
    return out
