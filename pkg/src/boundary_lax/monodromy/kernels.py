"""Kernel selection: the compiled extension when importable, numpy/scipy otherwise.

Set ``BOUNDARY_LAX_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py

BACKEND = "python"
ordered_expm_product = _kernels_py.ordered_expm_product
ordered_pair_sum = _kernels_py.ordered_pair_sum

if os.environ.get("BOUNDARY_LAX_PURE_PYTHON") != "1":
    try:
        from . import _kernels as _compiled
    except ImportError:
        _compiled = None
    if _compiled is not None:
        BACKEND = "cython"
        ordered_expm_product = _compiled.ordered_expm_product
        ordered_pair_sum = _compiled.ordered_pair_sum
