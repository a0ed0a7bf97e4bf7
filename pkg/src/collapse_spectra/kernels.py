"""Kernel selection: compiled extension if available, pure Python otherwise.

Set ``COLLAPSE_SPECTRA_KERNELS=py`` to force the pure-Python fallback (used
by the parity tests and the benchmark).  ``IMPLEMENTATION`` names whichever
backend won.
"""

import os

from . import _kernels_py

if os.environ.get("COLLAPSE_SPECTRA_KERNELS", "").lower() in {"py", "python"}:
    _impl = _kernels_py
else:
    try:
        from . import _kernels_cy as _impl
    except ImportError:
        _impl = _kernels_py

IMPLEMENTATION = _impl.IMPLEMENTATION

sturm_count = _impl.sturm_count
sturm_counts = _impl.sturm_counts
gtt_factor = _impl.gtt_factor
gtt_solve = _impl.gtt_solve
