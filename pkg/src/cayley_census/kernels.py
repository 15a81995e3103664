"""Backend selection for the hot kernels.

The compiled extension is used when it imports; otherwise the pure-Python
versions take over.  Setting ``CAYLEY_CENSUS_PURE=1`` forces the fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py
if os.environ.get("CAYLEY_CENSUS_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled  # type: ignore[attr-defined]
    except ImportError:  # extension not built
        pass
    else:
        _impl = _compiled
        BACKEND = "compiled"

refine = _impl.refine
orbit_labels = _impl.orbit_labels
cycle_counts = _impl.cycle_counts
girth = _impl.girth


def backend(name: str):
    """The kernel module for ``name`` ('python' or 'compiled')."""
    if name == "python":
        return _kernels_py
    if name == "compiled":
        from . import _kernels  # type: ignore[attr-defined]
        return _kernels
    raise ValueError(name)
