"""Hot kernels, compiled when the extension is built, pure Python otherwise.

Set ``GAMEMONOID_PURE=1`` to force the fallback.
"""
import os

from . import _purepy

BACKEND = "python"
_impl = _purepy

if not os.environ.get("GAMEMONOID_PURE"):
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _purepy

splitmix64 = _impl.splitmix64
ghost_policy = _impl.ghost_policy
tick = _impl.tick
segment_runs = _impl.segment_runs

__all__ = ["BACKEND", "splitmix64", "ghost_policy", "tick", "segment_runs"]
