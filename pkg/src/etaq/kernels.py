"""Backend selection for the convolution kernels.

Prefers the compiled extension ``etaq._ckernels`` and falls back to the
pure-Python twin ``etaq._kernels_py``.  Set ETAQ_PURE_PYTHON=1 to force
the fallback (the benchmark and the test suite use this to exercise
both implementations).
"""

from __future__ import annotations

import os

if os.environ.get("ETAQ_PURE_PYTHON"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]
    except ImportError:
        from . import _kernels_py as _impl  # type: ignore[no-redef]

BACKEND = _impl.BACKEND_NAME
conv_trunc = _impl.conv_trunc
pow_trunc = _impl.pow_trunc

__all__ = ["BACKEND", "conv_trunc", "pow_trunc"]
