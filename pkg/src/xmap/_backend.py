"""Kernel backend selection.

The compiled extension is preferred when built; setting XMAP_PURE=1 forces
the pure-Python kernel.  Both expose the same Kernel interface.
"""

from __future__ import annotations

import os
import warnings

MODE_ALL = 0
MODE_FILTERED = 1
MODE_PRIMES = 2

if os.environ.get("XMAP_PURE") == "1":
    from . import _fallback as _impl
else:
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]
    except ImportError:
        from . import _fallback as _impl  # type: ignore[no-redef]

        warnings.warn(
            "xmap._speedups extension not built; using the pure-Python kernel",
            RuntimeWarning,
            stacklevel=2,
        )

BACKEND: str = _impl.BACKEND
Kernel = _impl.Kernel


def make_kernel(spf, primes):
    return Kernel(spf, primes)


def backend_name() -> str:
    """Name of the active kernel backend ("compiled" or "python")."""
    return BACKEND
