"""Backend selection for the hot loops.

The Cython extension is used when it was built; set ``FDSTATES_PURE_PYTHON=1``
to force the numpy fallback.
"""
import os

if os.environ.get("FDSTATES_PURE_PYTHON"):
    from . import _kernels_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl

        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as _impl

        BACKEND = "python"

wigner_grid = _impl.wigner_grid
line_sums = _impl.line_sums
orthonormal_table = _impl.orthonormal_table

__all__ = ["BACKEND", "wigner_grid", "line_sums", "orthonormal_table"]
