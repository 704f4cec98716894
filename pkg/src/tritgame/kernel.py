"""Selects the counting-kernel implementation at import time.

Prefers the compiled extension (tritgame._kernel); falls back to the
pure-Python twin.  TRITGAME_PURE_PYTHON=1 forces the fallback, which the
kernel benchmark uses to time both sides.
"""

from __future__ import annotations

import os

if os.environ.get("TRITGAME_PURE_PYTHON") == "1":
    from . import _kernel_py as _impl
else:
    try:
        from . import _kernel as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernel_py as _impl

IMPLEMENTATION: str = _impl.IMPLEMENTATION
RING_SIZE: int = _impl.RING_SIZE
ring_one = _impl.ring_one
ring_mul = _impl.ring_mul
fold_counts = _impl.fold_counts

__all__ = ["IMPLEMENTATION", "RING_SIZE", "ring_one", "ring_mul", "fold_counts"]
