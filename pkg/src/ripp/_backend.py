"""Kernel backend selection.

The compiled extension is used when it was built; otherwise the pure-Python
module with the same interface is loaded.
"""

try:
    from . import _ckernels as kernels

    BACKEND = "cython"
except ImportError:  # extension not built
    from . import _pykernels as kernels

    BACKEND = "python"

__all__ = ["BACKEND", "kernels"]
