"""Kernel backend selection.

The exact-arithmetic hot paths (row echelon, weighted orthogonalization)
exist twice: compiled (``_speedups``, built from Cython at install time)
and pure Python (``_kernels_py``).  The compiled one is preferred when
present; setting ``NOISE_LATTICE_PURE=1`` forces the pure variant, which
the benchmark and the backend-agreement tests rely on.
"""

import os

if os.environ.get("NOISE_LATTICE_PURE") == "1":
    from . import _kernels_py as _impl

    BACKEND = "pure"
else:
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        from . import _kernels_py as _impl  # type: ignore[no-redef]

        BACKEND = "pure"

row_echelon_int = _impl.row_echelon_int
orthogonalize_int = _impl.orthogonalize_int
weighted_dot_int = _impl.weighted_dot_int
