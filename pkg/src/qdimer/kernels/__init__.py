"""Hot loops, compiled when the extension is built, numpy otherwise.

Set QDIMER_PURE_PYTHON=1 to force the numpy fallback.
"""
import os

from . import _fallback

BACKEND = "python"
rk4_batch = _fallback.rk4_batch

if os.environ.get("QDIMER_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from ._rk4 import rk4_batch  # noqa: F811
    except ImportError:
        pass
    else:
        BACKEND = "compiled"

__all__ = ["BACKEND", "rk4_batch"]
