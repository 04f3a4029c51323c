"""Kernel backend selection.

The compiled ``_core`` extension is used when it imports; otherwise the
numpy versions in ``_pykernels`` take over. Callers may request a backend
by name ("cython" or "python") to compare the two.
"""

import logging

from . import _pykernels
from .errors import InvalidParameterError

log = logging.getLogger(__name__)

try:
    from . import _core
except ImportError:  # extension not built
    _core = None
    log.debug("compiled kernels unavailable; using numpy fallback")

BACKENDS = {"python": _pykernels}
if _core is not None:
    BACKENDS["cython"] = _core

DEFAULT_BACKEND = "cython" if _core is not None else "python"


def get(backend=None):
    name = DEFAULT_BACKEND if backend is None else backend
    try:
        return BACKENDS[name]
    except KeyError:
        raise InvalidParameterError(
            f"unknown or unavailable kernel backend {name!r}; available: {sorted(BACKENDS)}"
        ) from None
