"""Kernel backend selection.

The compiled extension is used when it imports; setting the environment
variable ``LOWRANK_BOXQP_PURE=1`` forces the pure-Python fallback.
"""

import os

from . import _pykernels

BLAND = _pykernels.BLAND
DANTZIG = _pykernels.DANTZIG

_force_pure = os.environ.get("LOWRANK_BOXQP_PURE", "") not in ("", "0")

if _force_pure:
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _pykernels
        BACKEND = "python"

rref = _impl.rref
phase1 = _impl.phase1


def backends():
    """Return ``{name: module}`` for every kernel backend importable here."""
    found = {"python": _pykernels}
    try:
        from . import _ckernels
        found["cython"] = _ckernels
    except ImportError:
        pass
    return found
