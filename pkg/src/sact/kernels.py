"""Backend selection for the hot kernels.

The compiled extension is used when it imports; otherwise the pure-Python
twin is used. Set ``SACT_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _kernels_py

if os.environ.get("SACT_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        _impl = _kernels_py

BACKEND = "python" if _impl is _kernels_py else "compiled"

canon_search = _impl.canon_search
hom_search = _impl.hom_search
congruence_search = _impl.congruence_search
