"""Backend selection for the hot kernels.

``SQPERC_BACKEND=numpy`` forces the pure-numpy path; otherwise the numba
kernels are used when numba imports cleanly.
"""
import os

from . import _numpy_kernels


def _load(name):
    if name == "numpy":
        return _numpy_kernels
    if name == "numba":
        from . import _numba_kernels
        return _numba_kernels
    raise ValueError(f"unknown backend {name!r}; expected 'numba' or 'numpy'")


def _default():
    requested = os.environ.get("SQPERC_BACKEND", "").strip().lower()
    if requested:
        return requested, _load(requested)
    try:
        return "numba", _load("numba")
    except ImportError:
        return "numpy", _numpy_kernels


BACKEND_NAME, _active = _default()


def get_backend(name=None):
    """Kernel module for ``name`` (``None`` means the active backend)."""
    return _active if name is None else _load(name)


def label_grid(occ):
    return _active.label_grid(occ)
