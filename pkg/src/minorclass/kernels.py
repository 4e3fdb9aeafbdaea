"""Graph kernels: the compiled extension when it is importable, else pure Python.

Set ``MINORCLASS_PURE_PYTHON=1`` to force the fallback.
"""
from __future__ import annotations

import os

if os.environ.get("MINORCLASS_PURE_PYTHON"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

BACKEND: str = _impl.BACKEND
MAX_VERTICES: int = _impl.MAX_VERTICES
component_masks = _impl.component_masks
has_minor = _impl.has_minor
minor_flags = _impl.minor_flags
component_size_profile = _impl.component_size_profile

__all__ = ["BACKEND", "MAX_VERTICES", "component_masks", "has_minor", "minor_flags", "component_size_profile"]
