"""Kernel selection: the compiled extension when importable, numpy otherwise.

Set ``QFILTER_BACKEND=python`` to force the numpy implementation.
"""

import os

from . import _fallback


def load(name: str):
    """Return the kernel module for ``"compiled"`` or ``"python"``."""
    if name == "python":
        return _fallback
    if name == "compiled":
        from . import _kernels

        return _kernels
    raise ValueError(f"unknown backend {name!r}")


if os.environ.get("QFILTER_BACKEND", "").lower() == "python":
    BACKEND = "python"
else:
    try:
        load("compiled")
        BACKEND = "compiled"
    except ImportError:
        BACKEND = "python"

_impl = load(BACKEND)
grid_argmax = _impl.grid_argmax
tally = _impl.tally
