"""Backend selection for the numerical hot loops.

The compiled extension ``noisyops._kernels`` is used when importable; set the
environment variable ``NOISYOPS_PURE_PYTHON=1`` to force the pure-Python
implementations in :mod:`noisyops._pykernels`.
"""
import os

from . import _pykernels

BACKENDS = {"python": _pykernels}

try:
    from . import _kernels
except ImportError:  # extension not built
    _kernels = None
else:
    BACKENDS["cython"] = _kernels

if _kernels is not None and os.environ.get("NOISYOPS_PURE_PYTHON", "") in ("", "0"):
    BACKEND = "cython"
else:
    BACKEND = "python"

_impl = BACKENDS[BACKEND]

jacobi_eigh = _impl.jacobi_eigh
jacobi_svd_columns = _impl.jacobi_svd_columns
bisect_alpha = _impl.bisect_alpha
