"""Selects the row-reduction kernel at import time.

The compiled kernel is used when the extension module was built; otherwise the
pure-Python one.  Both produce identical output.
"""

from . import _rref_py

try:
    from . import _rref_cy
except ImportError:  # extension not built
    _rref_cy = None

_KERNELS = {"python": _rref_py.rref_int}
if _rref_cy is not None:
    _KERNELS["cython"] = _rref_cy.rref_int

BACKEND = "cython" if _rref_cy is not None else "python"
_active = _KERNELS[BACKEND]


def available_backends():
    return sorted(_KERNELS)


def set_backend(name):
    """Switch the active kernel; returns the previous backend name."""
    global BACKEND, _active
    if name not in _KERNELS:
        raise ValueError(f"backend {name!r} not available (have {available_backends()})")
    previous = BACKEND
    BACKEND = name
    _active = _KERNELS[name]
    return previous


def get_backend():
    return BACKEND


def rref_int(rows, ncols):
    return _active(rows, ncols)
