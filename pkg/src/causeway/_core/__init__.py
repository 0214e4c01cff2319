"""Kernel selection: compiled extension when built, pure Python otherwise.

Set CAUSEWAY_PURE_PYTHON=1 to force the fallback (used by the benchmark and
by tests that cross-check the two implementations).
"""
import os

if os.environ.get("CAUSEWAY_PURE_PYTHON") == "1":
    from causeway._core.python_impl import IMPL_NAME, dsep_reachable
else:
    try:
        from causeway._core._speedups import IMPL_NAME, dsep_reachable
    except ImportError:
        from causeway._core.python_impl import IMPL_NAME, dsep_reachable

__all__ = ["IMPL_NAME", "dsep_reachable"]
