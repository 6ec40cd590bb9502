"""Kernel selection: compiled extension when available, pure Python otherwise.

Set ``NESIEVE_PURE_PYTHON=1`` to force the fallback (useful for benchmarking
and for testing backend parity).
"""

import os

from . import _pykernel

if os.environ.get("NESIEVE_PURE_PYTHON"):
    kernel = _pykernel
else:
    try:
        from . import _ckernel as kernel  # type: ignore[no-redef]
    except ImportError:
        kernel = _pykernel

BACKEND = kernel.BACKEND_NAME


def available_kernels():
    """All importable kernels, name -> module (for parity tests/benchmarks)."""
    kernels = {"python": _pykernel}
    try:
        from . import _ckernel

        kernels["c"] = _ckernel
    except ImportError:
        pass
    return kernels
