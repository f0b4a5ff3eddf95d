"""Batch kernel dispatch: compiled extension when built, numpy otherwise.

Setting ``TWOPARABOLIC_NO_EXT=1`` forces the numpy kernels at import time.
"""

import os

if os.environ.get("TWOPARABOLIC_NO_EXT") == "1":
    from ._pykernels import act, cygan_pairs, cygan_to
    BACKEND = "python"
else:
    try:
        from ._ckernels import act, cygan_pairs, cygan_to
        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on the build
        from ._pykernels import act, cygan_pairs, cygan_to
        BACKEND = "python"

__all__ = ["BACKEND", "act", "cygan_pairs", "cygan_to"]
