"""Float-kernel backend selection.

POLYMOMENT_BACKEND=numba|numpy picks the lane explicitly; unset, numba
is used when importable (checked without importing, which is slow) and
numpy otherwise.  The exact rational lane never goes through here.
"""

from __future__ import annotations

import importlib.util
import os

from .errors import InputError

_modules = {}


def backend_name() -> str:
    env = os.environ.get("POLYMOMENT_BACKEND", "").strip().lower()
    if env:
        if env not in ("numba", "numpy"):
            raise InputError(
                "POLYMOMENT_BACKEND must be 'numba' or 'numpy', got %r" % (env,)
            )
        return env
    if importlib.util.find_spec("numba") is not None:
        return "numba"
    return "numpy"


def kernels():
    """The active float-kernel module (imported lazily, cached per name)."""
    name = backend_name()
    mod = _modules.get(name)
    if mod is None:
        if name == "numba":
            try:
                from . import _kernels_numba as mod
            except ImportError as exc:
                if os.environ.get("POLYMOMENT_BACKEND", "").strip().lower() == "numba":
                    raise InputError("backend 'numba' requested but numba "
                                     "failed to import: %s" % (exc,)) from exc
                from . import _kernels_numpy as mod
        else:
            from . import _kernels_numpy as mod
        _modules[name] = mod
    return mod
